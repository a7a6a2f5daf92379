#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gyre/double_gyre.hpp"
#include "gyre/params.hpp"
#include "gyre/tracer.hpp"
#include "gyre/verification.hpp"

namespace gyre {

enum class Experiment { verify_convergence, verify_eta, gyre, tracer };

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view s);

/// Everything one CLI experiment needs. Lengths are metres and times seconds
/// unless a field name says otherwise.
struct ExperimentConfig {
  Experiment experiment = Experiment::gyre;

  // Shared numerics.
  Splitting splitting = Splitting::strang;
  Limiter limiter = Limiter::none;
  bool entropy_fix = false;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir = "out";

  // Manufactured-solution studies.
  AnsatzParams ansatz{};
  std::vector<int> levels{10, 20, 40, 80, 160, 250};
  double base_dt = 0.025;
  double verify_t_end = 1.0;
  std::vector<double> etas{0.1, 0.3, 0.5, 0.7, 0.9};
  int eta_n = 50;
  double eta_omega = 0.3141592653589793;  // pi / 10
  double eta_t_end = 5.0;
  SampleConvention convention = SampleConvention::point;

  // Basin runs.
  GyreSetup gyre{};
  double dx = 40e3;
  std::optional<double> dt;
  std::optional<double> cfl;
  double years = 1.0;
  double snapshot_days = 30.0;
  int output_every = 100;

  // Coupled tracer.
  std::string spinup_state;  // conserved-field CSV; spin up from rest if empty
  double spinup_years = 2.0;
  std::optional<double> tracer_dt;
  double tracer_days = 360.0;
  std::vector<double> tracer_snapshot_days{0, 50, 100, 150, 240, 360};
  std::vector<CircleSpec> circles{{500e3, 500e3, 150e3}, {500e3, 1500e3, 150e3}};
  TracerDistribution distribution = TracerDistribution::uniform;
  Limiter tracer_limiter = Limiter::mc;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

ExperimentConfig default_experiment_config(Experiment e);

/// Parses a JSON document over the defaults of its "experiment" (or of
/// `fallback` when the document has none), then applies `overrides_json`,
/// another JSON object with the same keys. Unknown keys, wrong types, bad
/// units and a missing experiment all throw ConfigError naming the key.
ExperimentConfig parse_config(std::string_view json_text,
                              std::string_view overrides_json = "{}",
                              std::optional<Experiment> fallback = {});

/// Effective configuration as pretty-printed JSON that parse_config accepts.
std::string to_json(const ExperimentConfig& cfg);

/// "40km", "500 m", "2000" (metres). Throws ConfigError on other units.
double parse_length(std::string_view text);

}  // namespace gyre
