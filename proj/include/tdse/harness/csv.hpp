#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdse/harness/metrics.hpp"

namespace tdse::harness {

struct ConvergenceRow {
  double param = 0.0;
  double E = 0.0;
  double observed_order = 0.0;  // NaN when undefined
  double wall_seconds = 0.0;
  double steps_per_second = 0.0;
};

// Column header line: param,E,observed_order,wall_seconds,steps_per_second.
// metadata, when given, goes first as a single "# " comment line. Timing
// columns are left empty when timing is false.
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows,
                           const std::string& metadata = {}, bool timing = true);
// Columns t,E.
void write_error_csv(const std::string& path, const ErrorReport& r,
                     const std::string& metadata = {});

std::vector<ConvergenceRow> read_convergence_csv(const std::string& path);

std::string format_double(double v);

}  // namespace tdse::harness
