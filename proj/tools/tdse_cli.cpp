#include <omp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "tdse/contour/quadrature.hpp"
#include "tdse/harness/experiments.hpp"
#include "tdse/harness/snapshot.hpp"
#include "tdse/xform/dense.hpp"
#include "tdse/xform/transform.hpp"

using namespace tdse;
using namespace tdse::harness;

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kNumerics = 3, kIO = 4, kInternal = 5 };

struct Globals {
  std::string config;
  std::string preset;
  std::string out;
  bool serial = false;
  bool no_timing = false;
};

ExperimentConfig resolve(const Globals& g) {
  ExperimentConfig c;
  if (!g.config.empty())
    c = load_config(g.config);
  else if (!g.preset.empty())
    c = preset(g.preset);
  else
    throw ConfigError("need --config <path> or --preset <name>");
  if (!g.out.empty()) c.out_dir = g.out;
  if (g.no_timing) c.timing = false;
  return c;
}

void print_rows(const std::vector<ConvergenceRow>& rows, bool timing) {
  std::printf("%-14s %-12s %-8s%s\n", "param", "E", "order", timing ? " steps/s" : "");
  for (const auto& r : rows) {
    std::printf("%-14.6e %-12.4e ", r.param, r.E);
    if (std::isnan(r.observed_order)) std::printf("%-8s", "-");
    else std::printf("%-8.3f", r.observed_order);
    if (timing) std::printf(" %.1f", r.steps_per_second);
    std::printf("\n");
  }
}

int cmd_run(const Globals& g, SolverKind want) {
  auto c = resolve(g);
  if (c.solver != want)
    throw ConfigError("config selects the " + to_string(c.solver) + " solver");
  CMat ref;
  const bool stored = c.reference != ReferencePolicy::Analytic;
  if (stored) ref = reference_solution(c);
  auto r = run_single(c, stored ? &ref : nullptr);
  write_run(c, r);
  std::printf("%s: t=%.6g steps=%d Emax=%.4e", c.name.c_str(), r.t, r.steps, r.report.Emax);
  if (c.solver == SolverKind::Free) std::printf(" ionization=%.6f", r.ionization);
  if (c.timing) std::printf(" steps/s=%.1f", r.steps_per_second);
  std::printf("\n");
  return kOk;
}

int cmd_convergence(const Globals& g) {
  auto c = resolve(g);
  auto rows = convergence_sweep(c);
  write_sweep(c, rows);
  print_rows(rows, c.timing);
  return kOk;
}

struct TransformArgs {
  int M = 64, NE = 48, p = 8, q = 10, nr = 2, d = 1, trials = 20;
  double eps = 1e-10, phimax = 1.0, Vnorm = 589.0;
  unsigned seed = 1;
  std::string method = "auto";
};

int cmd_transform_test(const TransformArgs& a) {
  contour::ContourConfig cfg{a.eps, a.M, a.p, a.NE, a.q, a.nr, a.d, a.phimax, a.Vnorm};
  auto q = std::make_shared<contour::GammaQuadrature>(contour::build_quadrature(cfg));
  xform::TransformOptions opts;
  if (a.method == "direct") opts.c_method = xform::CMethod::Direct;
  else if (a.method == "chebyshev") opts.c_method = xform::CMethod::Chebyshev;
  else if (a.method != "auto") throw ConfigError("unknown method " + a.method);
  std::mt19937_64 rng(a.seed);
  std::normal_distribution<double> n01;
  auto rnd = [&] { return cplx(n01(rng), n01(rng)); };
  double ef = 0, ei = 0;
  const double tol = a.d == 1 ? 1e-12 : 1e-11;
  if (a.d == 1) {
    xform::Transform1D t(q, opts);
    for (int k = 0; k < a.trials; ++k) {
      CVec f(a.M), g(t.N());
      for (auto& v : f) v = rnd();
      for (auto& v : g) v = rnd();
      CVec rf = xform::dense_forward_1d(*q, f), ri = xform::dense_inverse_1d(*q, g);
      ef = std::max(ef, (t.forward(f) - rf).norm() / rf.norm());
      ei = std::max(ei, (t.inverse(g) - ri).norm() / ri.norm());
    }
  } else {
    xform::Transform2D t(q, q, opts);
    const int N = q->total();
    for (int k = 0; k < a.trials; ++k) {
      CMat f(a.M, a.M), g(N, N);
      for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = rnd();
      for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rnd();
      CMat rf = xform::dense_forward_2d(*q, *q, f), ri = xform::dense_inverse_2d(*q, *q, g);
      ef = std::max(ef, (t.forward(f) - rf).norm() / rf.norm());
      ei = std::max(ei, (t.inverse(g) - ri).norm() / ri.norm());
    }
  }
  std::printf("d=%d M=%d N=%d H=%.6f forward_rel=%.3e inverse_rel=%.3e tol=%.0e\n", a.d, a.M,
              q->total(), q->H, ef, ei, tol);
  return (ef <= tol && ei <= tol) ? kOk : kNumerics;
}

int cmd_dump_quadrature(const Globals& g, int axis) {
  auto c = resolve(g);
  if (c.solver != SolverKind::Free) throw ConfigError("dump-quadrature needs a free-solver config");
  if (axis < 0 || axis >= c.d) throw ConfigError("axis out of range");
  // rebuild the axis rule the solver would use
  contour::ContourConfig q;
  q.eps = c.contour.eps;
  q.M = c.M_axis(axis);
  q.p = c.contour.p;
  q.q = c.contour.q;
  q.nr = c.contour.nr;
  q.d = c.d;
  q.Vnorm = c.potential.l2_norm(c.d);
  auto F = c.field_model();
  q.phimax = (!F.is_zero() && F.axis() == axis) ? contour::quiver_radius(F, F.duration()) : 0.0;
  q.NE = !c.contour.NE.empty()
             ? (c.contour.NE.size() == 1 ? c.contour.NE[0] : c.contour.NE.at(axis))
             : contour::ne_for_spacing(q.M, q.p,
                                       c.contour.h.size() == 1 ? c.contour.h[0] : c.contour.h.at(axis));
  auto G = contour::build_quadrature(q);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    const auto path = (std::filesystem::path(g.out) / (c.name + "_quadrature.csv")).string();
    file.open(path);
    if (!file) throw IOError("cannot open " + path);
    os = &file;
  }
  *os << "# H=" << format_double(G.H) << " K=" << format_double(G.K) << " h=" << format_double(G.h)
      << " kappa=" << G.kappa << " N=" << G.total() << "\n";
  *os << "block,re,im,w_re,w_im\n";
  for (auto b : contour::kBlocks) {
    const auto& z = G.block_nodes(b);
    const auto& w = G.block_weights(b);
    for (size_t i = 0; i < z.size(); ++i)
      *os << contour::block_name(b) << ',' << format_double(z[i].real()) << ','
          << format_double(z[i].imag()) << ',' << format_double(w[i].real()) << ','
          << format_double(w[i].imag()) << "\n";
  }
  if (!*os) throw IOError("write failed");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volterra spectral TDSE solver"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON experiment config");
  app.add_option("--preset", g.preset, "named preset instead of a config file");
  app.add_option("--out", g.out, "output directory");
  app.add_flag("--serial", g.serial, "single-threaded run");
  app.add_flag("--no-timing", g.no_timing, "leave timing columns empty");

  auto* run_p = app.add_subcommand("run-periodic", "march the periodic solver");
  auto* run_f = app.add_subcommand("run-free", "march the free-space solver");
  auto* conv = app.add_subcommand("convergence", "run the configured sweep");
  TransformArgs ta;
  auto* tt = app.add_subcommand("transform-test", "fast transforms against dense summation");
  tt->add_option("--M", ta.M);
  tt->add_option("--NE", ta.NE);
  tt->add_option("--p", ta.p);
  tt->add_option("--q", ta.q);
  tt->add_option("--nr", ta.nr);
  tt->add_option("--d", ta.d)->check(CLI::Range(1, 2));
  tt->add_option("--trials", ta.trials);
  tt->add_option("--eps", ta.eps);
  tt->add_option("--phimax", ta.phimax);
  tt->add_option("--vnorm", ta.Vnorm);
  tt->add_option("--seed", ta.seed);
  tt->add_option("--method", ta.method, "auto, direct or chebyshev");
  std::string example;
  bool full = false;
  auto* ex = app.add_subcommand("example", "reproduce a named example");
  ex->add_option("name", example, "example1, example2[a-d], example3, example4")->required();
  ex->add_flag("--full", full, "long sweeps");
  int axis = 0;
  auto* dq = app.add_subcommand("dump-quadrature", "write contour nodes and weights");
  dq->add_option("--axis", axis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (g.serial) omp_set_num_threads(1);

  try {
    if (*run_p) return cmd_run(g, SolverKind::Periodic);
    if (*run_f) return cmd_run(g, SolverKind::Free);
    if (*conv) return cmd_convergence(g);
    if (*tt) return cmd_transform_test(ta);
    if (*dq) return cmd_dump_quadrature(g, axis);
    if (*ex) {
      auto s = run_example(example, g.out.empty() ? "out" : g.out, full, !g.no_timing);
      for (const auto& l : s.lines) std::printf("%s\n", l.c_str());
      for (const auto& f : s.files) std::printf("wrote %s\n", f.c_str());
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const NumericsError& e) {
    std::fprintf(stderr, "numerics error: %s\n", e.what());
    return kNumerics;
  } catch (const IOError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kIO;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
  return kUsage;
}
