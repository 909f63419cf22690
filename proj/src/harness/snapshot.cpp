#include "tdse/harness/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace tdse::harness {

namespace {

constexpr char kMagic[8] = {'T', 'D', 'S', 'E', 'S', 'N', 'A', 'P'};

template <class T>
void put(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw IOError("snapshot: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s) {
  long n = 1;
  for (int m : s.M) n *= m;
  if (s.M.empty() || n != s.values.size()) throw ConfigError("snapshot: shape mismatch");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IOError("cannot open " + path + " for writing");
  os.write(kMagic, 8);
  put<uint32_t>(os, kSnapshotVersion);
  put<uint32_t>(os, 0);
  put<uint32_t>(os, uint32_t(s.M.size()));
  for (int m : s.M) put<uint32_t>(os, uint32_t(m));
  put<double>(os, s.t);
  for (long i = 0; i < n; ++i) {
    put<double>(os, s.values[i].real());
    put<double>(os, s.values[i].imag());
  }
  if (!os) throw IOError("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IOError("cannot open " + path);
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw IOError("not a snapshot file: " + path);
  if (get<uint32_t>(is) != kSnapshotVersion) throw IOError("unsupported snapshot version");
  get<uint32_t>(is);
  Snapshot s;
  uint32_t dims = get<uint32_t>(is);
  if (dims == 0 || dims > 3) throw IOError("snapshot: bad dimension count");
  long n = 1;
  for (uint32_t i = 0; i < dims; ++i) {
    s.M.push_back(int(get<uint32_t>(is)));
    n *= s.M.back();
  }
  s.t = get<double>(is);
  s.values.resize(n);
  for (long i = 0; i < n; ++i) {
    double re = get<double>(is);
    double im = get<double>(is);
    s.values[i] = {re, im};
  }
  return s;
}

Snapshot make_snapshot(const CMat& u, int d, double t) {
  Snapshot s;
  s.t = t;
  if (d == 1)
    s.M = {int(u.size())};
  else
    s.M = {int(u.rows()), int(u.cols())};
  s.values = Eigen::Map<const CVec>(u.data(), u.size());
  return s;
}

CMat snapshot_grid(const Snapshot& s) {
  const long r = s.M[0];
  const long c = s.M.size() > 1 ? s.M[1] : 1;
  return Eigen::Map<const CMat>(s.values.data(), r, c);
}

}  // namespace tdse::harness
