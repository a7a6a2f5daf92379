#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gyre/params.hpp"
#include "gyre/source_step.hpp"
#include "gyre/state.hpp"
#include "gyre/wave_propagation.hpp"

namespace gyre {

struct StepRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double max_speed = 0.0;
  double max_courant = 0.0;
  double energy_proxy = 0.0;
};

/// sum((hu^2 + hv^2 + g_r h^2) / 2) * dx * dy over interior cells.
double energy_proxy(const ConservedField& q, double g_r);

class FractionalStepSolver;
using StepHook = std::function<void(const FractionalStepSolver&, const StepRecord&)>;

/// Alternates the hyperbolic step (problem A) and the momentum source step
/// (problem B) on one conserved field.
class FractionalStepSolver {
 public:
  explicit FractionalStepSolver(RunConfig config);

  const RunConfig& config() const { return config_; }
  const Grid& grid() const { return grid_; }
  const ConservedField& state() const { return q_; }
  ConservedField& state() { return q_; }
  double time() const { return t_; }
  long steps_taken() const { return step_; }

  void set_state(ConservedField q, double t = 0.0);

  /// A(dt) then B(dt).
  HyperbolicStepReport advance_godunov(double dt);
  /// A(dt/2), B(dt), A(dt/2).
  HyperbolicStepReport advance_strang(double dt);
  /// One step with the configured splitting.
  HyperbolicStepReport advance(double dt);

  /// Only problem A, for diagnostics and refinement studies.
  HyperbolicStepReport advance_hyperbolic_only(double dt);
  /// Only problem B.
  void advance_source_only(double dt);

  /// Integrates to config().t_end. Fixed-dt runs clip the final step so the
  /// run lands on t_end; adaptive runs pick dt from the CFL target. Records
  /// are taken every output_every steps (every step in adaptive mode) and at
  /// the final step; `hook` sees each one.
  std::vector<StepRecord> run(const StepHook& hook = {});

  StepRecord record(const HyperbolicStepReport& report, double dt) const;

  /// Where run() writes the state when a step fails; no dump when unset.
  std::optional<std::filesystem::path> failure_dump;

 private:
  HyperbolicStepReport hyperbolic(double dt);
  void source(double dt, double t_start);

  RunConfig config_;
  Grid grid_;
  ConservedField q_;
  ConservedField scratch_;
  HyperbolicStepper hyper_;
  SourceStepper source_;
  HyperbolicOptions hopts_;
  double t_ = 0.0;
  long step_ = 0;
};

/// CSV with columns step,t,dt,mass,max_speed,max_courant,energy_proxy.
void write_step_records(std::ostream& os, const std::vector<StepRecord>& records);

}  // namespace gyre
