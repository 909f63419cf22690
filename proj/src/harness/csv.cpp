#include "tdse/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tdse::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, r.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IOError("cannot open " + path + " for writing");
  return os;
}

double parse_field(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw IOError("bad csv field '" + s + "'");
  }
}

}  // namespace

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows,
                           const std::string& metadata, bool timing) {
  auto os = open_out(path);
  if (!metadata.empty()) os << "# " << metadata << "\n";
  os << "param,E,observed_order,wall_seconds,steps_per_second\n";
  for (const auto& r : rows) {
    os << format_double(r.param) << ',' << format_double(r.E) << ','
       << format_double(r.observed_order) << ',';
    if (timing) os << format_double(r.wall_seconds) << ',' << format_double(r.steps_per_second);
    else os << ',';
    os << "\n";
  }
  if (!os) throw IOError("write failed: " + path);
}

void write_error_csv(const std::string& path, const ErrorReport& r, const std::string& metadata) {
  auto os = open_out(path);
  if (!metadata.empty()) os << "# " << metadata << "\n";
  os << "t,E\n";
  for (const auto& [t, E] : r.rows) os << format_double(t) << ',' << format_double(E) << "\n";
  if (!os) throw IOError("write failed: " + path);
}

std::vector<ConvergenceRow> read_convergence_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IOError("cannot open " + path);
  std::vector<ConvergenceRow> out;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    while (f.size() < 5) f.emplace_back();
    out.push_back({parse_field(f[0]), parse_field(f[1]), parse_field(f[2]), parse_field(f[3]),
                   parse_field(f[4])});
  }
  return out;
}

}  // namespace tdse::harness
