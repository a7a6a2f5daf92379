#include "gyre/splitting.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "gyre/boundary.hpp"
#include "gyre/errors.hpp"
#include "gyre/io.hpp"

namespace gyre {

double energy_proxy(const ConservedField& q, double g_r) {
  double sum = 0.0;
  q.for_each_interior([&](int, int, const State& s) {
    sum += 0.5 * (s.hu * s.hu + s.hv * s.hv + g_r * s.h * s.h);
  });
  return sum * q.grid().cell_area();
}

FractionalStepSolver::FractionalStepSolver(RunConfig config)
    : config_(std::move(config)) {
  config_.validate();
  grid_ = build_grid(config_);
  q_ = ConservedField(grid_, State{1.0, 0.0, 0.0});
  scratch_ = q_;
  hyper_ = HyperbolicStepper(grid_);
  source_ = SourceStepper(grid_, config_.params);
  source_.workers = config_.workers;
  hopts_.limiter = config_.limiter;
  hopts_.entropy_fix = config_.entropy_fix;
  hopts_.transverse = config_.transverse;
  hopts_.workers = config_.workers;
  hopts_.closed_walls = config_.boundary == BoundaryKind::solid_wall;
}

void FractionalStepSolver::set_state(ConservedField q, double t) {
  if (!(q.grid() == grid_)) throw Error("state does not match the solver grid");
  q_ = std::move(q);
  fill_ghosts(q_, config_.boundary);
  t_ = t;
  step_ = 0;
}

HyperbolicStepReport FractionalStepSolver::hyperbolic(double dt) {
  fill_ghosts(q_, config_.boundary);
  const HyperbolicStepReport r =
      hyper_.step(q_, scratch_, dt, config_.params.g_r, hopts_);
  std::swap(q_, scratch_);
  fill_ghosts(q_, config_.boundary);
  return r;
}

void FractionalStepSolver::source(double dt, double t_start) {
  source_.advance(q_, dt, t_start, config_.boundary);
  fill_ghosts(q_, config_.boundary);
}

HyperbolicStepReport FractionalStepSolver::advance_godunov(double dt) {
  const HyperbolicStepReport r = hyperbolic(dt);
  source(dt, t_);
  t_ += dt;
  ++step_;
  return r;
}

HyperbolicStepReport FractionalStepSolver::advance_strang(double dt) {
  const double half = 0.5 * dt;
  HyperbolicStepReport r = hyperbolic(half);
  source(dt, t_);
  const HyperbolicStepReport r2 = hyperbolic(half);
  r.max_courant = std::max(r.max_courant, r2.max_courant);
  r.max_speed = std::max(r.max_speed, r2.max_speed);
  t_ += dt;
  ++step_;
  return r;
}

HyperbolicStepReport FractionalStepSolver::advance(double dt) {
  return config_.splitting == Splitting::strang ? advance_strang(dt)
                                                : advance_godunov(dt);
}

HyperbolicStepReport FractionalStepSolver::advance_hyperbolic_only(double dt) {
  const HyperbolicStepReport r = hyperbolic(dt);
  t_ += dt;
  ++step_;
  return r;
}

void FractionalStepSolver::advance_source_only(double dt) {
  source(dt, t_);
  t_ += dt;
  ++step_;
}

StepRecord FractionalStepSolver::record(const HyperbolicStepReport& report,
                                        double dt) const {
  StepRecord r;
  r.step = step_;
  r.t = t_;
  r.dt = dt;
  r.mass = total_mass(q_);
  r.max_speed = report.max_speed;
  r.max_courant = report.max_courant;
  r.energy_proxy = energy_proxy(q_, config_.params.g_r);
  return r;
}

namespace {

template <class E>
[[noreturn]] void rethrow_annotated(const E& e, long step, double t,
                                    const std::optional<std::filesystem::path>& dump) {
  std::string msg = "step " + std::to_string(step) + " (t=" + std::to_string(t) +
                    "): " + e.what();
  if (dump) msg += " [state written to " + dump->string() + "]";
  throw E(msg);
}

}  // namespace

std::vector<StepRecord> FractionalStepSolver::run(const StepHook& hook) {
  std::vector<StepRecord> records;
  const double t_end = config_.t_end;
  const bool adaptive = config_.cfl_target.has_value();
  const double tol = 1e-12 * std::max(1.0, std::fabs(t_end));

  while (t_end - t_ > tol) {
    const double remaining = t_end - t_;
    double dt = adaptive ? stable_dt(q_, config_.params.g_r, *config_.cfl_target)
                         : *config_.dt;
    bool last = false;
    if (dt >= remaining - 1e-9 * dt) {
      dt = remaining;
      last = true;
    }
    HyperbolicStepReport report;
    try {
      report = advance(dt);
    } catch (const Error& e) {
      if (failure_dump) {
        try {
          write_field_csv(*failure_dump, state_dump(q_, t_));
        } catch (const Error&) {
          // keep the original failure
        }
      }
      const long at = step_ + 1;
      if (const auto* c = dynamic_cast<const CflError*>(&e))
        rethrow_annotated(*c, at, t_, failure_dump);
      if (const auto* p = dynamic_cast<const PositivityError*>(&e))
        rethrow_annotated(*p, at, t_, failure_dump);
      if (const auto* i = dynamic_cast<const InstabilityError*>(&e))
        rethrow_annotated(*i, at, t_, failure_dump);
      rethrow_annotated(e, at, t_, failure_dump);
    }
    if (last) t_ = t_end;
    if (adaptive || last || step_ % config_.output_every == 0) {
      records.push_back(record(report, dt));
      if (hook) hook(*this, records.back());
    }
  }
  return records;
}

void write_step_records(std::ostream& os, const std::vector<StepRecord>& records) {
  os << "step,t,dt,mass,max_speed,max_courant,energy_proxy\n";
  char buf[512];
  for (const StepRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.step, r.t, r.dt, r.mass, r.max_speed, r.max_courant,
                  r.energy_proxy);
    os << buf;
  }
}

}  // namespace gyre
