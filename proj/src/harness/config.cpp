#include "tdse/harness/config.hpp"

#include <cmath>
#include <fstream>

namespace tdse::harness {

using nlohmann::json;

namespace {

template <class E>
E enum_from(const std::string& s, std::initializer_list<std::pair<const char*, E>> table,
            const char* what) {
  for (const auto& [k, v] : table)
    if (s == k) return v;
  throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
}

const std::initializer_list<std::pair<const char*, SolverKind>> kSolvers{
    {"periodic", SolverKind::Periodic}, {"free", SolverKind::Free}};
const std::initializer_list<std::pair<const char*, InitialKind>> kInitial{
    {"wavepacket", InitialKind::Wavepacket}, {"ground_state", InitialKind::GroundState}};
const std::initializer_list<std::pair<const char*, ReferencePolicy>> kRefs{
    {"analytic", ReferencePolicy::Analytic},
    {"self_converged", ReferencePolicy::SelfConverged},
    {"file", ReferencePolicy::File}};
const std::initializer_list<std::pair<const char*, SweepParam>> kSweeps{
    {"none", SweepParam::None}, {"steps", SweepParam::Steps}, {"h", SweepParam::H},
    {"M", SweepParam::M}};
const std::initializer_list<std::pair<const char*, xform::CMethod>> kCMethods{
    {"auto", xform::CMethod::Auto},
    {"direct", xform::CMethod::Direct},
    {"chebyshev", xform::CMethod::Chebyshev}};

template <class E>
std::string name_of(E e, std::initializer_list<std::pair<const char*, E>> table) {
  for (const auto& [k, v] : table)
    if (v == e) return k;
  return "?";
}

template <class T>
std::vector<T> scalar_or_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

// Reading keys with json::value throws type_error on mismatch; turn that
// into a config error with the key name.
template <class T>
T opt(const json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_string(SolverKind s) { return name_of(s, kSolvers); }
std::string to_string(ReferencePolicy r) { return name_of(r, kRefs); }
std::string to_string(SweepParam s) { return name_of(s, kSweeps); }

problems::FieldModel ExperimentConfig::field_model() const {
  if (!field || field->A0 == 0.0) return {};
  return problems::FieldModel::pulse(*field);
}

void ExperimentConfig::validate() const {
  if (d != 1 && d != 2) throw ConfigError("d must be 1 or 2");
  if (M.empty() || (M.size() != 1 && int(M.size()) != d))
    throw ConfigError("M needs one entry or one per dimension");
  for (int m : M)
    if (m < 4 || m % 2) throw ConfigError("M must be even and >= 4");
  if (!(T > 0)) throw ConfigError("T must be positive");
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (order < 2 || order > 8 || order % 2) throw ConfigError("order must be 2, 4, 6 or 8");
  if (cadence < 0) throw ConfigError("cadence must be >= 0");
  if (potential.kind != problems::PotentialSpec::Kind::Zero && !(potential.beta > 0))
    throw ConfigError("potential beta must be positive");
  if (field) {
    if (!(field->T > 0)) throw ConfigError("field T must be positive");
    if (field->axis < 0 || field->axis >= d) throw ConfigError("field axis out of range");
  }
  if (initial == InitialKind::Wavepacket && !(wavepacket.sigma > 0))
    throw ConfigError("wavepacket sigma must be positive");
  if (initial == InitialKind::GroundState &&
      potential.kind != problems::PotentialSpec::Kind::GaussianWell &&
      potential.kind != problems::PotentialSpec::Kind::MovingPeriodicWell)
    throw ConfigError("ground_state initial data needs a Gaussian well potential");
  if (solver == SolverKind::Free) {
    if (potential.kind == problems::PotentialSpec::Kind::MovingPeriodicWell)
      throw ConfigError("the periodic moving well needs the periodic solver");
    const auto& c = contour;
    if (!(c.eps > 0 && c.eps < 1)) throw ConfigError("contour eps must lie in (0, 1)");
    if (c.p != 2 && c.p != 4 && c.p != 8) throw ConfigError("contour p must be 2, 4 or 8");
    if (c.q < 1 || c.q > 64) throw ConfigError("contour q must be in 1..64");
    if (c.nr < 0) throw ConfigError("contour nr must be >= 0");
    auto per_axis = [&](size_t n) { return n == 1 || int(n) == d; };
    if (c.NE.empty() && c.h.empty()) throw ConfigError("free solver needs contour h or NE");
    if (!c.NE.empty() && !per_axis(c.NE.size())) throw ConfigError("contour NE size");
    if (c.NE.empty() && !per_axis(c.h.size())) throw ConfigError("contour h size");
    for (double h : c.h)
      if (!(h > 0)) throw ConfigError("contour h must be positive");
  } else {
    if (potential.kind == problems::PotentialSpec::Kind::MovingPeriodicWell && d != 1)
      throw ConfigError("moving periodic well is 1D");
  }
  if (reference == ReferencePolicy::Analytic) {
    if (initial != InitialKind::Wavepacket || potential.kind != problems::PotentialSpec::Kind::Zero)
      throw ConfigError("analytic reference needs V = 0 and wavepacket initial data");
  }
  if (reference == ReferencePolicy::File && reference_file.empty())
    throw ConfigError("reference policy 'file' needs reference.file");
  if (sweep != SweepParam::None && sweep_values.empty())
    throw ConfigError("sweep needs values");
  if (sweep == SweepParam::H && solver != SolverKind::Free)
    throw ConfigError("h sweeps apply to the free solver");
  for (double v : sweep_values)
    if (!(v > 0)) throw ConfigError("sweep values must be positive");
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (j.contains("preset")) c = preset(j.at("preset").get<std::string>());
  c.name = opt<std::string>(j, "name", c.name);
  if (j.contains("solver")) c.solver = enum_from(j["solver"].get<std::string>(), kSolvers, "solver");
  c.d = opt(j, "d", c.d);
  if (j.contains("M")) c.M = scalar_or_list<int>(j["M"]);
  c.T = opt(j, "T", c.T);
  c.steps = opt(j, "steps", c.steps);
  if (j.contains("dt")) c.steps = int(std::lround(c.T / j["dt"].get<double>()));
  c.order = opt(j, "order", c.order);
  if (j.contains("potential")) {
    const auto& p = j["potential"];
    if (p.contains("kind"))
      c.potential.kind = problems::potential_kind_from_string(p["kind"].get<std::string>());
    c.potential.V0 = opt(p, "V0", c.potential.V0);
    c.potential.beta = opt(p, "beta", c.potential.beta);
    c.potential.c = opt(p, "c", c.potential.c);
  }
  if (j.contains("field")) {
    const auto& f = j["field"];
    if (f.is_null()) {
      c.field.reset();
    } else {
      problems::FieldSpec s = c.field.value_or(problems::FieldSpec{0.0, 0.0, c.T, 0});
      s.A0 = opt(f, "A0", s.A0);
      s.omega = opt(f, "omega", s.omega);
      s.T = opt(f, "T", c.T);
      s.axis = opt(f, "axis", s.axis);
      c.field = s;
    }
  }
  if (j.contains("initial")) {
    const auto& i = j["initial"];
    if (i.contains("kind")) c.initial = enum_from(i["kind"].get<std::string>(), kInitial, "initial kind");
    c.wavepacket.sigma = opt(i, "sigma", c.wavepacket.sigma);
    c.wavepacket.k0 = opt(i, "k0", c.wavepacket.k0);
  }
  if (j.contains("contour")) {
    const auto& k = j["contour"];
    auto& o = c.contour;
    o.eps = opt(k, "eps", o.eps);
    o.p = opt(k, "p", o.p);
    o.q = opt(k, "q", o.q);
    o.nr = opt(k, "nr", o.nr);
    if (k.contains("h")) {
      o.h = scalar_or_list<double>(k["h"]);
      o.NE.clear();
    }
    if (k.contains("NE")) o.NE = scalar_or_list<int>(k["NE"]);
    if (k.contains("c_method"))
      o.c_method = enum_from(k["c_method"].get<std::string>(), kCMethods, "c_method");
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    c.out_dir = opt<std::string>(o, "dir", c.out_dir);
    c.cadence = opt(o, "cadence", c.cadence);
    c.snapshots = opt(o, "snapshots", c.snapshots);
    c.timing = opt(o, "timing", c.timing);
  }
  if (j.contains("reference")) {
    const auto& r = j["reference"];
    if (r.contains("policy"))
      c.reference = enum_from(r["policy"].get<std::string>(), kRefs, "reference policy");
    c.reference_steps = opt(r, "steps", c.reference_steps);
    c.reference_file = opt<std::string>(r, "file", c.reference_file);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (s.contains("param")) c.sweep = enum_from(s["param"].get<std::string>(), kSweeps, "sweep param");
    if (s.contains("values")) c.sweep_values = s["values"].get<std::vector<double>>();
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["solver"] = to_string(c.solver);
  j["d"] = c.d;
  j["M"] = c.M;
  j["T"] = c.T;
  j["steps"] = c.steps;
  j["order"] = c.order;
  j["potential"] = {{"kind", problems::to_string(c.potential.kind)},
                    {"V0", c.potential.V0},
                    {"beta", c.potential.beta},
                    {"c", c.potential.c}};
  if (c.field)
    j["field"] = {{"A0", c.field->A0}, {"omega", c.field->omega}, {"T", c.field->T},
                  {"axis", c.field->axis}};
  else
    j["field"] = nullptr;
  j["initial"] = {{"kind", name_of(c.initial, kInitial)},
                  {"sigma", c.wavepacket.sigma},
                  {"k0", c.wavepacket.k0}};
  json k = {{"eps", c.contour.eps},
            {"p", c.contour.p},
            {"q", c.contour.q},
            {"nr", c.contour.nr},
            {"c_method", name_of(c.contour.c_method, kCMethods)}};
  if (!c.contour.NE.empty()) k["NE"] = c.contour.NE;
  else k["h"] = c.contour.h;
  j["contour"] = k;
  j["output"] = {{"dir", c.out_dir},
                 {"cadence", c.cadence},
                 {"snapshots", c.snapshots},
                 {"timing", c.timing}};
  j["reference"] = {{"policy", to_string(c.reference)},
                    {"steps", c.reference_steps},
                    {"file", c.reference_file}};
  j["sweep"] = {{"param", to_string(c.sweep)}, {"values", c.sweep_values}};
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IOError("cannot open config " + path);
  json j;
  try {
    j = json::parse(is, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

std::vector<std::string> preset_names() {
  return {"example1", "example2a", "example2b", "example2c", "example2d", "example3", "example4"};
}

ExperimentConfig preset(const std::string& name) {
  using K = problems::PotentialSpec::Kind;
  ExperimentConfig c;
  c.name = name;
  if (name == "example1") {
    // moving periodic well, one period of the motion
    c.solver = SolverKind::Periodic;
    c.M = {256};
    c.T = 2 * kPi / 15.0;
    c.steps = 800;
    c.potential = {K::MovingPeriodicWell, 300.0, 0.2, 15.0};
    c.initial = InitialKind::GroundState;
    c.reference = ReferencePolicy::SelfConverged;
    c.reference_steps = 12800;
    c.sweep = SweepParam::Steps;
    c.sweep_values = {200, 400, 800, 1600, 3200};
  } else if (name.size() == 9 && name.rfind("example2", 0) == 0 && name[8] >= 'a' &&
             name[8] <= 'd') {
    // free wavepacket, no time discretization error
    const double A0[] = {0.0, 500.0, 1500.0, 3500.0};
    const double a0 = A0[name[8] - 'a'];
    c.M = {64};
    c.T = 0.1;
    c.steps = 50;
    c.cadence = 1;
    c.order = 2;
    if (a0 != 0) c.field = problems::FieldSpec{a0, 500.0, 0.1, 0};
    c.wavepacket = {0.1, 0.0};
    c.contour.eps = 1e-14;
    c.contour.q = 16;
    c.contour.nr = 2;
    c.contour.h = {0.5};
    c.reference = ReferencePolicy::Analytic;
    if (a0 == 0) {
      c.sweep = SweepParam::M;
      c.sweep_values = {8, 12, 16, 20, 24, 32, 40, 48, 64};
    } else {
      c.sweep = SweepParam::H;
      for (int k = 0; k <= 12; ++k) c.sweep_values.push_back(std::pow(2.0, -k / 4.0));
    }
  } else if (name == "example3") {
    c.M = {100};
    c.T = 0.5;
    c.steps = 1000;
    c.potential = {K::GaussianWell, 1400.0, 0.1, 0.0};
    c.field = problems::FieldSpec{100.0, 100.0, 0.5, 0};
    c.initial = InitialKind::GroundState;
    c.contour.eps = 1e-10;
    c.contour.q = 10;
    c.contour.nr = 1;
    c.contour.h = {0.5};
    c.contour.c_method = xform::CMethod::Direct;
    c.reference = ReferencePolicy::SelfConverged;
    c.reference_steps = 16000;
    c.sweep = SweepParam::Steps;
    c.sweep_values = {1000, 2000, 4000, 8000};
  } else if (name == "example4") {
    c.d = 2;
    c.M = {100, 100};
    c.T = 0.5;
    c.steps = 1000;
    c.potential = {K::GaussianWell, 1400.0, 0.1, 0.0};
    c.field = problems::FieldSpec{100.0, 100.0, 0.5, 0};
    c.initial = InitialKind::GroundState;
    c.contour.eps = 1e-5;
    c.contour.q = 10;
    c.contour.nr = 1;
    c.contour.h = {1.4, 1.6};
    c.contour.c_method = xform::CMethod::Direct;
    c.reference = ReferencePolicy::SelfConverged;
    c.reference_steps = 8000;
    c.sweep = SweepParam::Steps;
    c.sweep_values = {1000, 2000, 4000};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  c.validate();
  return c;
}

}  // namespace tdse::harness
