#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tdse/harness/config.hpp"
#include "tdse/harness/csv.hpp"
#include "tdse/harness/experiments.hpp"
#include "tdse/harness/metrics.hpp"
#include "tdse/harness/snapshot.hpp"

using namespace tdse;
using namespace tdse::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "tdse_test_harness" / name;
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(TDSE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

ExperimentConfig free_packet() {
  ExperimentConfig c;
  c.name = "packet";
  c.solver = SolverKind::Free;
  c.M = {64};
  c.T = 0.05;
  c.steps = 20;
  c.order = 2;
  c.potential = {};
  c.wavepacket = {0.1, 0.0};
  c.contour.eps = 1e-14;
  c.contour.q = 16;
  c.contour.nr = 2;
  c.contour.h = {0.5};
  c.cadence = 5;
  c.reference = ReferencePolicy::Analytic;
  return c;
}

}  // namespace

TEST_CASE("l2 error") {
  CVec a = CVec::Constant(50, cplx(0.3, 0.4)), b = CVec::Zero(50);
  CHECK(l2_error(a, b, 1, 1.0) == doctest::Approx(0.5 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(l2_error(a, CVec::Zero(49), 1, 1.0), ConfigError);

  // 2D constant difference: |c| * 2
  CMat A = CMat::Constant(16, 16, cplx(0.0, 1.0)), B = CMat::Zero(16, 16);
  CHECK(l2_error(A, B, 2, 1.0) == doctest::Approx(2.0).epsilon(1e-14));

  // grid sum of a smooth periodic-looking bump matches its integral
  const int M = 200;
  CVec f(M), z = CVec::Zero(M);
  for (int j = 0; j < M; ++j) {
    double x = -1.0 + 2.0 * j / M;
    f[j] = std::exp(-x * x / (2 * 0.01));
  }
  // int exp(-x^2/0.01) dx = sqrt(0.01 pi)
  CHECK(l2_error(f, z, 1, 1.0) == doctest::Approx(std::sqrt(std::sqrt(0.01 * kPi))).epsilon(1e-12));
}

TEST_CASE("observed orders") {
  auto o = observed_orders({1.0, 0.5, 0.25}, {1.0, 1.0 / 256, 1.0 / 65536});
  REQUIRE(o.size() == 3);
  CHECK(std::isnan(o[0]));
  CHECK(o[1] == doctest::Approx(8.0));
  CHECK(o[2] == doctest::Approx(8.0));
  // M sweep: error falls as M grows
  auto m = observed_orders({8, 16}, {1e-2, 1e-4});
  CHECK(m[1] == doctest::Approx(-std::log2(100.0)));
}

TEST_CASE("error report") {
  ErrorReport r;
  r.add(0.1, 1e-3);
  r.add(0.2, 5e-4);
  CHECK(r.Emax == 1e-3);
  CHECK(r.final_error() == 5e-4);
}

TEST_CASE("snapshot round trip") {
  CMat u(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) u(i, j) = cplx(i + 0.25, -j * 1e-300);
  auto p = scratch("a.snap");
  write_snapshot(p.string(), make_snapshot(u, 2, 0.125));
  Snapshot s = read_snapshot(p.string());
  CHECK(s.M == std::vector<int>{3, 4});
  CHECK(s.t == 0.125);
  CHECK(snapshot_grid(s) == u);
  CHECK(fs::file_size(p) == 8 + 4 + 4 + 4 + 8 + 8 + 12 * 16);

  CMat v = CMat::Random(7, 1);
  write_snapshot(p.string(), make_snapshot(v, 1, 0.0));
  CHECK(snapshot_grid(read_snapshot(p.string())) == v);

  std::string bytes = slurp(p);
  {
    std::ofstream o(p, std::ios::binary);
    o << "NOTASNAP" << bytes.substr(8);
  }
  CHECK_THROWS_AS(read_snapshot(p.string()), IOError);
  {
    std::ofstream o(p, std::ios::binary);
    o << bytes.substr(0, bytes.size() - 5);
  }
  CHECK_THROWS_AS(read_snapshot(p.string()), IOError);
  CHECK_THROWS_AS(read_snapshot(scratch("missing.snap").string()), IOError);
}

TEST_CASE("convergence csv") {
  std::vector<ConvergenceRow> rows{{1e-3, 2e-5, std::nan(""), 0.5, 100.0},
                                   {5e-4, 1e-7, 7.64, 1.0, 99.0}};
  auto p = scratch("c.csv");
  write_convergence_csv(p.string(), rows, R"({"name":"x"})");
  std::string text = slurp(p);
  CHECK(text.rfind("# {\"name\":\"x\"}\nparam,E,observed_order,wall_seconds,steps_per_second\n", 0) == 0);
  auto back = read_convergence_csv(p.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].param == 1e-3);
  CHECK(std::isnan(back[0].observed_order));
  CHECK(back[1].observed_order == 7.64);
  CHECK(back[1].steps_per_second == 99.0);

  write_convergence_csv(p.string(), rows, {}, false);
  auto lines = slurp(p);
  CHECK(lines.find(",,\n") != std::string::npos);
  CHECK(format_double(0.1) == "1.0000000000000001e-01");
}

TEST_CASE("config json") {
  ExperimentConfig c = preset("example3");
  ExperimentConfig d = config_from_json(config_to_json(c));
  CHECK(config_to_json(d) == config_to_json(c));
  CHECK(d.M == c.M);
  CHECK(d.field.has_value());
  CHECK(d.field->omega == 100.0);

  auto j = nlohmann::json::parse(R"({"preset":"example1","steps":400})");
  ExperimentConfig e = config_from_json(j);
  CHECK(e.solver == SolverKind::Periodic);
  CHECK(e.steps == 400);

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"d":3})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"order":5})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"solver":"box"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"steps":-1})")), ConfigError);
  CHECK_THROWS_AS(preset("example9"), ConfigError);
  CHECK_THROWS_AS(load_config(scratch("nope.json").string()), IOError);

  auto p = scratch("bad.json");
  {
    std::ofstream o(p);
    o << "{ \"steps\": ";
  }
  CHECK_THROWS_AS(load_config(p.string()), ConfigError);
  {
    std::ofstream o(p);
    o << "// comment\n{ \"preset\": \"example2a\" }";
  }
  CHECK(load_config(p.string()).name == "example2a");
  CHECK(preset_names().size() == 7);
}

TEST_CASE("single run against the closed form") {
  ExperimentConfig c = free_packet();
  RunResult r = run_single(c);
  CHECK(r.steps == 20);
  CHECK(r.t == doctest::Approx(0.05));
  CHECK(r.report.rows.size() == 5);
  CHECK(r.report.Emax < 1e-12);
}

TEST_CASE("sweeps") {
  ExperimentConfig c = free_packet();
  c.sweep = SweepParam::Steps;
  c.sweep_values = {10};
  auto one = convergence_sweep(c);
  REQUIRE(one.size() == 1);
  CHECK(std::isnan(one[0].observed_order));

  // no potential: no time discretization error at any dt
  c.sweep_values = {5, 10, 20};
  auto rows = convergence_sweep(c);
  REQUIRE(rows.size() == 3);
  for (auto& r : rows) CHECK(r.E < 1e-12);
  CHECK(rows[0].param == doctest::Approx(0.01));

  c.sweep = SweepParam::M;
  c.sweep_values = {16, 32, 64};
  auto m = convergence_sweep(c);
  REQUIRE(m.size() == 3);
  CHECK(m[2].E < m[0].E);

  c.reference = ReferencePolicy::SelfConverged;
  CHECK_THROWS_AS(convergence_sweep(c), ConfigError);
}

TEST_CASE("reference from a snapshot file") {
  ExperimentConfig c = free_packet();
  auto p = scratch("ref.snap");
  write_snapshot(p.string(), make_snapshot(analytic_solution(c, c.T), 1, c.T));
  c.reference = ReferencePolicy::File;
  c.reference_file = p.string();
  CMat ref = reference_solution(c);
  RunResult r = run_single(c, &ref);
  REQUIRE(r.report.rows.size() == 1);
  CHECK(r.report.final_error() < 1e-12);
  c.M = {32};
  CHECK_THROWS_AS(reference_solution(c), ConfigError);
}

TEST_CASE("serial output is deterministic") {
  auto dir = scratch("det");
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = "convergence --preset example2a --serial --no-timing --out " + dir.string();
  const auto f = dir / "example2a_convergence.csv";
  REQUIRE(run_cli(cmd) == 0);
  REQUIRE(fs::exists(f));
  const std::string first = slurp(f);
  fs::remove(f);
  REQUIRE(run_cli(cmd) == 0);
  CHECK(slurp(f) == first);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("no-such-command") == 1);
  CHECK(run_cli("run-free --preset example9") == 2);
  CHECK(run_cli("run-free --config " + scratch("missing.json").string()) == 4);
  CHECK(run_cli("transform-test --M 64 --trials 2") == 0);
  CHECK(run_cli("example nonsense") == 2);
  auto out = scratch("q");
  fs::create_directories(out);
  CHECK(run_cli("dump-quadrature --preset example3 --out " + out.string()) == 0);
  CHECK(fs::exists(out / "example3_quadrature.csv"));
}
