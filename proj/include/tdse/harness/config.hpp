#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tdse/problems/field.hpp"
#include "tdse/problems/potential.hpp"
#include "tdse/problems/wavepacket.hpp"
#include "tdse/xform/axis.hpp"

namespace tdse::harness {

enum class SolverKind { Periodic, Free };
enum class InitialKind { Wavepacket, GroundState };
enum class ReferencePolicy { Analytic, SelfConverged, File };
enum class SweepParam { None, Steps, H, M };

struct ContourKnobs {
  double eps = 1e-10;
  int p = 8;
  int q = 10;
  int nr = 1;
  std::vector<double> h;  // per axis; used when NE is empty
  std::vector<int> NE;    // per axis
  xform::CMethod c_method = xform::CMethod::Auto;
};

struct ExperimentConfig {
  std::string name = "custom";
  SolverKind solver = SolverKind::Free;
  int d = 1;
  std::vector<int> M{64};  // per axis
  double T = 0.1;
  int steps = 100;
  int order = 8;
  problems::PotentialSpec potential;
  std::optional<problems::FieldSpec> field;
  InitialKind initial = InitialKind::Wavepacket;
  problems::WavepacketParams wavepacket;
  ContourKnobs contour;

  std::string out_dir = ".";
  int cadence = 0;  // record E(t) every cadence steps; 0 = final time only
  bool snapshots = true;
  bool timing = true;

  ReferencePolicy reference = ReferencePolicy::Analytic;
  int reference_steps = 0;  // self-converged; 0 = 4x the largest step count
  std::string reference_file;

  SweepParam sweep = SweepParam::None;
  std::vector<double> sweep_values;

  // Throws ConfigError on inconsistent settings.
  void validate() const;
  int M_axis(int a) const { return M.size() == 1 ? M[0] : M.at(a); }
  double dt() const { return T / steps; }
  problems::FieldModel field_model() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

// example1, example2a..example2d, example3, example4.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

std::string to_string(SolverKind s);
std::string to_string(ReferencePolicy r);
std::string to_string(SweepParam s);

}  // namespace tdse::harness
