#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gyre/params.hpp"
#include "gyre/splitting.hpp"
#include "gyre/state.hpp"

namespace gyre {

using TracerField = ScalarField;

struct CircleSpec {
  double xc = 0.0;  // m
  double yc = 0.0;  // m
  double r = 1.0;   // m
};

enum class TracerDistribution { uniform, truncated_gaussian };

/// C = 0 outside every circle; inside (closed disk, tested at cell centers)
/// C is drawn from the requested distribution on (0, 1]. The generator is
/// std::mt19937_64 seeded with `seed`; uniforms are built from its top 53
/// bits and Gaussians by Box-Muller, so results are platform independent.
TracerField init_concentration(const Grid& grid, std::span<const CircleSpec> circles,
                               std::uint64_t seed,
                               TracerDistribution dist = TracerDistribution::uniform);

/// Face-normal velocities: u at x-face i-1/2 stored at (i, j) for i = 1..nx+1,
/// v at y-face j-1/2 stored at (i, j) for j = 1..ny+1.
struct FaceVelocities {
  ScalarField u;
  ScalarField v;
};

/// Averages adjacent cell-center velocities of a ghost-filled field.
FaceVelocities edge_velocities(const ConservedField& q);

/// Non-conservative wave-propagation step for C_t + u . grad C = 0, done as an
/// x-sweep followed by a y-sweep. Ghost cells of C are filled internally
/// (periodic wrap or even mirror). Throws CflError when a face Courant
/// number exceeds one.
class TracerStepper {
 public:
  TracerStepper() = default;
  explicit TracerStepper(const Grid& grid);

  /// Returns the largest face Courant number encountered.
  double step(TracerField& c, const FaceVelocities& faces, double dt,
              Limiter limiter, BoundaryKind boundary);

 private:
  Grid grid_{};
  TracerField tmp_;
  std::vector<double> line_, speed_, out_;
};

TracerField step_tracer(const TracerField& c, const FaceVelocities& faces,
                        double dt, Limiter limiter, BoundaryKind boundary);

/// Concentration-weighted centroid of the interior cells.
struct Centroid {
  double x = 0.0;
  double y = 0.0;
  double mass = 0.0;  // sum of C over cells
};
Centroid tracer_centroid(const TracerField& c);

struct TracerSnapshot {
  double t = 0.0;  // seconds since the tracer was released
  TracerField c;
};

struct CoupledOptions {
  double dt = 720.0;  // s
  double t_end = 360 * 86400.0;
  Limiter tracer_limiter = Limiter::mc;
  std::vector<double> snapshot_days{0, 50, 100, 150, 240, 360};
};

struct CoupledStats {
  double min_c = 0.0;  // over all steps and cells
  double max_c = 0.0;
  long steps = 0;
};

/// Advances the shallow-water solver (wind on) and then the tracer with the
/// updated velocities, once per step. `per_step` sees the tracer after every
/// step; `on_snapshot` at each requested day.
CoupledStats run_coupled(FractionalStepSolver& solver, TracerField& c,
                         const CoupledOptions& opts,
                         const std::function<void(const TracerSnapshot&)>& on_snapshot = {},
                         const std::function<void(const TracerField&)>& per_step = {});

}  // namespace gyre
