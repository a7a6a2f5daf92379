#pragma once

#include <utility>
#include <vector>

#include "gyre/params.hpp"
#include "gyre/riemann.hpp"
#include "gyre/state.hpp"

namespace gyre {

/// Wave limiter phi(theta).
double apply_limiter(double theta, Limiter kind);

struct HyperbolicOptions {
  Limiter limiter = Limiter::none;
  bool entropy_fix = false;
  bool transverse = true;  // propagate increment and correction waves
  int workers = 1;
  bool closed_walls = false;  // no transverse flux through the outer faces
};

struct HyperbolicStepReport {
  double max_courant = 0.0;
  double max_speed = 0.0;
  Limiter limiter_used = Limiter::none;
};

/// Unsplit second-order wave-propagation step for the homogeneous
/// shallow-water system. Holds per-interface scratch so repeated steps on
/// the same grid do not allocate.
class HyperbolicStepper {
 public:
  HyperbolicStepper() = default;
  explicit HyperbolicStepper(const Grid& grid);

  /// Advances `in` (ghost cells filled) by dt into `out`. Only interior cells
  /// of `out` are written. Throws CflError when the Courant number exceeds
  /// one and InstabilityError on non-finite output.
  HyperbolicStepReport step(const ConservedField& in, ConservedField& out,
                            double dt, double g_r,
                            const HyperbolicOptions& opts);

 private:
  void resize(const Grid& grid);

  Grid grid_{};
  // Interface contributions: index i holds the x-interface i-1/2 and index j
  // the y-interface j-1/2.
  ConservedField x_minus_, x_plus_;
  ConservedField y_minus_, y_plus_;
  // Transverse contributions written by x-sweeps to the lower/upper y-edges
  // of each cell, and by y-sweeps to the left/right x-edges.
  ConservedField from_x_lower_, from_x_upper_;
  ConservedField from_y_left_, from_y_right_;
};

/// Functional form of HyperbolicStepper::step.
std::pair<ConservedField, HyperbolicStepReport> step_hyperbolic(
    const ConservedField& q, double dt, double g_r,
    const HyperbolicOptions& opts);

struct WaveSpeeds {
  double x = 0.0;  // max |u| + c
  double y = 0.0;  // max |v| + c
};

WaveSpeeds max_wave_speed(const ConservedField& q, double g_r);

/// cfl_target / (s_x/dx + s_y/dy); +infinity when both speeds vanish.
double stable_dt(const WaveSpeeds& speeds, const Grid& grid, double cfl_target);
double stable_dt(const ConservedField& q, double g_r, double cfl_target);

}  // namespace gyre
