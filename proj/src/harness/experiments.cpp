#include "tdse/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>
#include <sstream>

#include "tdse/contour/quadrature.hpp"
#include "tdse/freespace/solver.hpp"
#include "tdse/harness/snapshot.hpp"
#include "tdse/periodic/solver.hpp"
#include "tdse/problems/ground_state.hpp"
#include "tdse/problems/wavepacket.hpp"

namespace tdse::harness {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::shared_ptr<const contour::GammaQuadrature> axis_quadrature(const ExperimentConfig& c, int a) {
  const auto& k = c.contour;
  contour::ContourConfig q;
  q.eps = k.eps;
  q.M = c.M_axis(a);
  q.p = k.p;
  q.q = k.q;
  q.nr = k.nr;
  q.d = c.d;
  q.Vnorm = c.potential.l2_norm(c.d);
  auto F = c.field_model();
  q.phimax = (!F.is_zero() && F.axis() == a) ? contour::quiver_radius(F, F.duration()) : 0.0;
  if (!k.NE.empty())
    q.NE = k.NE.size() == 1 ? k.NE[0] : k.NE.at(a);
  else
    q.NE = contour::ne_for_spacing(q.M, q.p, k.h.size() == 1 ? k.h[0] : k.h.at(a));
  return std::make_shared<contour::GammaQuadrature>(contour::build_quadrature(q));
}

// Grid values as a flat row-major vector.
CVec flat(const CMat& u) { return Eigen::Map<const CVec>(u.data(), u.size()); }

CMat shaped(const CVec& v, int rows, int cols) {
  return Eigen::Map<const CMat>(v.data(), rows, cols);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IOError("cannot create directory " + dir + ": " + ec.message());
}

std::string path_in(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

}  // namespace

double domain_half_width(const ExperimentConfig& c) {
  return c.solver == SolverKind::Periodic ? kPi : 1.0;
}

RVec config_grid(const ExperimentConfig& c, int a) {
  const int M = c.M_axis(a);
  const double L = domain_half_width(c);
  RVec x(M);
  for (int j = 0; j < M; ++j) x[j] = -L + 2.0 * L * j / M;
  return x;
}

CMat initial_data(const ExperimentConfig& c) {
  const RVec x0 = config_grid(c, 0);
  const RVec x1 = c.d == 2 ? config_grid(c, 1) : RVec::Zero(1);
  CMat u(x0.size(), x1.size());
  if (c.initial == InitialKind::Wavepacket) {
    for (int i = 0; i < x0.size(); ++i)
      for (int j = 0; j < x1.size(); ++j) {
        cplx v = problems::wavepacket(c.wavepacket, x0[i], 0.0);
        if (c.d == 2) v *= problems::wavepacket(c.wavepacket, x1[j], 0.0);
        u(i, j) = v;
      }
    return u;
  }
  auto gs = problems::ground_state(c.potential, c.d);
  for (int i = 0; i < x0.size(); ++i)
    for (int j = 0; j < x1.size(); ++j)
      u(i, j) = c.d == 1 ? (*gs)(x0[i]) : (*gs)(std::hypot(x0[i], x1[j]));
  return u;
}

CMat analytic_solution(const ExperimentConfig& c, double t) {
  if (c.potential.kind != problems::PotentialSpec::Kind::Zero ||
      c.initial != InitialKind::Wavepacket)
    throw ConfigError("analytic solution needs V = 0 and wavepacket initial data");
  const auto F = c.field_model();
  const problems::FieldModel none;
  const RVec x0 = config_grid(c, 0);
  const RVec x1 = c.d == 2 ? config_grid(c, 1) : RVec::Zero(1);
  CVec f0(x0.size()), f1 = CVec::Ones(x1.size());
  for (int i = 0; i < x0.size(); ++i)
    f0[i] = problems::wavepacket(c.wavepacket, x0[i], t, F.axis() == 0 ? F : none);
  if (c.d == 2)
    for (int j = 0; j < x1.size(); ++j)
      f1[j] = problems::wavepacket(c.wavepacket, x1[j], t, F.axis() == 1 ? F : none);
  return f0 * f1.transpose();
}

RunResult run_single(const ExperimentConfig& c, const CMat* reference_final) {
  c.validate();
  RunResult r;
  r.steps = c.steps;
  const double dt = c.dt();
  const double L = domain_half_width(c);
  const bool analytic = c.reference == ReferencePolicy::Analytic && !reference_final;
  const auto V = c.potential.to_potential();
  const auto F = c.field_model();
  const CMat u0 = initial_data(c);
  const int rows = int(u0.rows()), cols = int(u0.cols());

  auto record = [&](double t, const CMat& u) {
    if (analytic) r.report.add(t, l2_error(u, analytic_solution(c, t), c.d, L));
  };

  if (c.solver == SolverKind::Periodic) {
    if (c.d == 2 && c.M_axis(0) != c.M_axis(1))
      throw ConfigError("periodic solver needs equal M per axis");
    periodic::PeriodicSolver s(c.d, c.M_axis(0), V, F, c.order, dt);
    s.initialize(flat(u0));
    record(0.0, u0);
    const auto t0 = Clock::now();
    for (int k = 1; k <= c.steps; ++k) {
      s.step();
      if (analytic && ((c.cadence > 0 && k % c.cadence == 0) || k == c.steps))
        record(s.state().t, shaped(s.state().u, rows, cols));
    }
    r.wall_seconds = seconds_since(t0);
    r.u = shaped(s.state().u, rows, cols);
    r.t = s.state().t;
    r.ionization = std::numeric_limits<double>::quiet_NaN();
  } else {
    const xform::TransformOptions opts{c.contour.c_method, 0.0};
    auto q0 = axis_quadrature(c, 0);
    std::unique_ptr<freespace::FreeSolver> s;
    if (c.d == 1)
      s = std::make_unique<freespace::FreeSolver>(q0, V, F, c.order, dt, opts);
    else
      s = std::make_unique<freespace::FreeSolver>(q0, axis_quadrature(c, 1), V, F, c.order, dt,
                                                  opts);
    s->initialize(u0);
    record(0.0, u0);
    const auto t0 = Clock::now();
    for (int k = 1; k <= c.steps; ++k) {
      s->step();
      if (analytic && ((c.cadence > 0 && k % c.cadence == 0) || k == c.steps))
        record(s->state().t, s->state().u);
    }
    r.wall_seconds = seconds_since(t0);
    r.u = s->state().u;
    r.t = s->state().t;
    r.ionization = s->ionization_fraction();
  }
  r.steps_per_second = r.wall_seconds > 0 ? c.steps / r.wall_seconds : 0.0;
  r.report.wall_seconds = r.wall_seconds;
  r.report.steps_per_second = r.steps_per_second;
  if (reference_final) r.report.add(r.t, l2_error(r.u, *reference_final, c.d, L));
  return r;
}

CMat reference_solution(const ExperimentConfig& c) {
  if (c.reference == ReferencePolicy::File) {
    CMat u = snapshot_grid(read_snapshot(c.reference_file));
    if (u.rows() != c.M_axis(0) || u.cols() != (c.d == 2 ? c.M_axis(1) : 1))
      throw ConfigError("reference snapshot grid does not match the config");
    return u;
  }
  if (c.reference != ReferencePolicy::SelfConverged)
    throw ConfigError("no stored reference for the analytic policy");
  ExperimentConfig ref = c;
  int base = c.steps;
  if (c.sweep == SweepParam::Steps)
    for (double v : c.sweep_values) base = std::max(base, int(std::lround(v)));
  ref.steps = c.reference_steps > 0 ? c.reference_steps : 4 * base;
  if (c.sweep == SweepParam::H) {
    const double hmin = *std::min_element(c.sweep_values.begin(), c.sweep_values.end());
    ref.contour.NE.clear();
    ref.contour.h.assign(c.d, 0.0);
    for (int a = 0; a < c.d; ++a)
      ref.contour.h[a] = a == 0 ? hmin : (c.contour.h.size() == 1 ? c.contour.h[0] : c.contour.h.at(a));
  }
  ref.sweep = SweepParam::None;
  return run_single(ref).u;
}

std::vector<ConvergenceRow> convergence_sweep(const ExperimentConfig& c) {
  c.validate();
  std::vector<ExperimentConfig> jobs;
  std::vector<double> param;
  if (c.sweep == SweepParam::None) {
    jobs.push_back(c);
    param.push_back(c.dt());
  }
  for (double v : c.sweep_values) {
    ExperimentConfig j = c;
    j.sweep = SweepParam::None;
    switch (c.sweep) {
      case SweepParam::Steps:
        j.steps = int(std::lround(v));
        param.push_back(j.dt());
        break;
      case SweepParam::H:
        j.contour.NE.clear();
        j.contour.h.resize(c.d, c.contour.h.empty() ? v : c.contour.h[0]);
        if (c.d == 2 && c.contour.h.size() == 2) j.contour.h[1] = c.contour.h[1];
        j.contour.h[0] = v;
        param.push_back(v);
        break;
      case SweepParam::M:
        if (c.reference != ReferencePolicy::Analytic)
          throw ConfigError("M sweeps need the analytic reference");
        j.M.assign(1, int(std::lround(v)));
        param.push_back(v);
        break;
      case SweepParam::None:
        break;
    }
    jobs.push_back(j);
  }
  CMat ref;
  const bool stored = c.reference != ReferencePolicy::Analytic;
  if (stored) ref = reference_solution(c);
  std::vector<ConvergenceRow> rows;
  std::vector<double> err;
  for (size_t i = 0; i < jobs.size(); ++i) {
    RunResult r = run_single(jobs[i], stored ? &ref : nullptr);
    const double E = stored ? r.report.final_error() : r.report.Emax;
    err.push_back(E);
    rows.push_back({param[i], E, 0.0, r.wall_seconds, r.steps_per_second});
  }
  auto ord = observed_orders(param, err);
  for (size_t i = 0; i < rows.size(); ++i) rows[i].observed_order = ord[i];
  return rows;
}

void write_run(const ExperimentConfig& c, const RunResult& r) {
  ensure_dir(c.out_dir);
  auto meta = config_to_json(c);
  if (c.timing) {
    meta["wall_seconds"] = r.wall_seconds;
    meta["steps_per_second"] = r.steps_per_second;
  }
  if (c.solver == SolverKind::Free) meta["ionization_fraction"] = r.ionization;
  meta["Emax"] = r.report.Emax;
  write_error_csv(path_in(c.out_dir, c.name + "_error.csv"), r.report, meta.dump());
  if (c.snapshots) {
    write_snapshot(path_in(c.out_dir, c.name + "_t0.snap"), make_snapshot(initial_data(c), c.d, 0.0));
    write_snapshot(path_in(c.out_dir, c.name + "_final.snap"), make_snapshot(r.u, c.d, r.t));
  }
}

void write_sweep(const ExperimentConfig& c, const std::vector<ConvergenceRow>& rows) {
  ensure_dir(c.out_dir);
  write_convergence_csv(path_in(c.out_dir, c.name + "_convergence.csv"), rows,
                        config_to_json(c).dump(), c.timing);
}

ExampleSummary run_example(const std::string& name, const std::string& out_dir, bool full,
                           bool timing) {
  ExampleSummary out;
  if (name == "example2") {
    for (const char* v : {"example2a", "example2b", "example2c", "example2d"}) {
      auto s = run_example(v, out_dir, full, timing);
      out.lines.insert(out.lines.end(), s.lines.begin(), s.lines.end());
      out.files.insert(out.files.end(), s.files.begin(), s.files.end());
    }
    return out;
  }
  ExperimentConfig c = preset(name);
  c.out_dir = out_dir;
  c.timing = timing;
  if (full) {
    if (c.name == "example1") c.sweep_values = {200, 400, 800, 1600, 3200, 6400, 12800};
    if (c.name == "example3") {
      c.sweep_values = {1000, 2000, 4000, 8000, 16000, 32000};
      c.reference_steps = 64000;
    }
    if (c.name == "example4") {
      c.sweep_values = {1000, 2000, 4000, 8000, 16000};
      c.reference_steps = 32000;
    }
  }
  auto rows = convergence_sweep(c);
  write_sweep(c, rows);
  out.files.push_back(path_in(out_dir, c.name + "_convergence.csv"));
  std::ostringstream os;
  for (const auto& r : rows) {
    os.str("");
    os << c.name << " param=" << format_double(r.param) << " E=" << format_double(r.E);
    if (!std::isnan(r.observed_order)) os << " order=" << format_double(r.observed_order);
    if (timing) os << " steps/s=" << format_double(r.steps_per_second);
    out.lines.push_back(os.str());
  }

  // final state of the base run
  CMat ref;
  const bool stored = c.reference != ReferencePolicy::Analytic;
  ExperimentConfig base = c;
  base.sweep = SweepParam::None;
  if (stored) ref = reference_solution(c);
  RunResult r = run_single(base, stored ? &ref : nullptr);
  write_run(base, r);
  out.files.push_back(path_in(out_dir, c.name + "_error.csv"));
  if (c.snapshots) out.files.push_back(path_in(out_dir, c.name + "_final.snap"));

  if (c.name == "example3" || c.name == "example4") {
    for (double w : {50.0, 100.0, 200.0}) {
      ExperimentConfig e = base;
      e.field->omega = w;
      e.name = c.name + "_omega" + std::to_string(int(w));
      e.steps = c.name == "example3" ? 8000 : 2000;
      RunResult ri = run_single(e);
      os.str("");
      os << e.name << " ionization=" << format_double(ri.ionization);
      out.lines.push_back(os.str());
      if (c.snapshots) {
        write_snapshot(path_in(out_dir, e.name + "_final.snap"), make_snapshot(ri.u, e.d, ri.t));
        out.files.push_back(path_in(out_dir, e.name + "_final.snap"));
      }
    }
  }
  return out;
}

}  // namespace tdse::harness
