#pragma once

#include <string>
#include <vector>

#include "tdse/harness/config.hpp"
#include "tdse/harness/csv.hpp"
#include "tdse/harness/metrics.hpp"

namespace tdse::harness {

struct RunResult {
  ErrorReport report;  // E(t) rows when a reference is available
  CMat u;              // final grid values (1D: M x 1)
  double t = 0.0;
  int steps = 0;
  double ionization = 0.0;  // free solver only
  double wall_seconds = 0.0;
  double steps_per_second = 0.0;
};

// Grid points of axis a: [-1, 1) for the free solver, [-pi, pi) periodic.
RVec config_grid(const ExperimentConfig& c, int a);
CMat initial_data(const ExperimentConfig& c);
// Closed-form wavepacket at time t (V = 0 only).
CMat analytic_solution(const ExperimentConfig& c, double t);
double domain_half_width(const ExperimentConfig& c);

// Marches c.steps steps. With an analytic reference E(t) is recorded every
// c.cadence steps and at the final time; with reference_final (grid values
// at T) only E(T) is recorded.
RunResult run_single(const ExperimentConfig& c, const CMat* reference_final = nullptr);

// Final-time reference per c.reference: self-converged run at
// reference_steps, or the snapshot in reference_file.
CMat reference_solution(const ExperimentConfig& c);

// param is dt for step sweeps, h (axis 0) for h sweeps, M for M sweeps;
// E is Emax with an analytic reference and E(T) otherwise.
std::vector<ConvergenceRow> convergence_sweep(const ExperimentConfig& c);

// Writes <out>/<name>_error.csv and, if enabled, the initial and final
// snapshots.
void write_run(const ExperimentConfig& c, const RunResult& r);
void write_sweep(const ExperimentConfig& c, const std::vector<ConvergenceRow>& rows);

struct ExampleSummary {
  std::vector<std::string> lines;  // human-readable results
  std::vector<std::string> files;  // artifacts written
};

// name: a preset name, or example2 for all four Example-2 variants.
// Reduced sweeps unless full is set.
ExampleSummary run_example(const std::string& name, const std::string& out_dir, bool full = false,
                           bool timing = true);

}  // namespace tdse::harness
