#pragma once

#include <string>
#include <vector>

#include "tdse/core.hpp"

namespace tdse::harness {

// Binary grid snapshot:
//   bytes 0-7   "TDSESNAP"
//   bytes 8-11  uint32 version (1)
//   bytes 12-15 uint32 zero
//   uint32 dims, uint32 M per dim, float64 t,
//   then prod(M) (re, im) float64 pairs, row-major. All little-endian.
struct Snapshot {
  std::vector<int> M;
  double t = 0.0;
  CVec values;
};

inline constexpr unsigned kSnapshotVersion = 1;

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

Snapshot make_snapshot(const CMat& u, int d, double t);
CMat snapshot_grid(const Snapshot& s);

}  // namespace tdse::harness
