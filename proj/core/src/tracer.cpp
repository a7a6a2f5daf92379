#include "gyre/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gyre/boundary.hpp"
#include "gyre/double_gyre.hpp"
#include "gyre/errors.hpp"
#include "gyre/wave_propagation.hpp"

namespace gyre {

namespace {

// Uniform on (0, 1] from the top 53 bits.
double unit_interval(std::mt19937_64& gen) {
  return static_cast<double>((gen() >> 11) + 1) * 0x1p-53;
}

double draw(std::mt19937_64& gen, TracerDistribution dist) {
  if (dist == TracerDistribution::uniform) return unit_interval(gen);
  for (;;) {
    const double u1 = unit_interval(gen);
    const double u2 = unit_interval(gen);
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const double c = 0.5 + 0.25 * z;
    if (c > 0.0 && c <= 1.0) return c;
  }
}

}  // namespace

TracerField init_concentration(const Grid& grid, std::span<const CircleSpec> circles,
                               std::uint64_t seed, TracerDistribution dist) {
  std::mt19937_64 gen(seed);
  TracerField c(grid, 0.0);
  c.for_each_interior([&](int i, int j, double& value) {
    const double x = grid.xc(i);
    const double y = grid.yc(j);
    for (const CircleSpec& circle : circles) {
      const double dx = x - circle.xc;
      const double dy = y - circle.yc;
      if (dx * dx + dy * dy <= circle.r * circle.r) {
        value = draw(gen, dist);
        return;
      }
    }
  });
  return c;
}

FaceVelocities edge_velocities(const ConservedField& q) {
  const Grid& g = q.grid();
  FaceVelocities f{ScalarField(g), ScalarField(g)};
  const auto u = [&](int i, int j) {
    const State& s = q(i, j);
    require_positive_depth(s.h, i, j);
    return s.hu / s.h;
  };
  const auto v = [&](int i, int j) {
    const State& s = q(i, j);
    require_positive_depth(s.h, i, j);
    return s.hv / s.h;
  };
  for (int j = 1; j <= g.ny; ++j) {
    for (int i = 1; i <= g.nx + 1; ++i) f.u(i, j) = 0.5 * (u(i - 1, j) + u(i, j));
  }
  for (int j = 1; j <= g.ny + 1; ++j) {
    for (int i = 1; i <= g.nx; ++i) f.v(i, j) = 0.5 * (v(i, j - 1) + v(i, j));
  }
  return f;
}

namespace {

// One sweep along a line of n cells held in line[0..n+3] (cell k at k+1);
// speed[k] is the face velocity at face k-1/2 for k = 1..n+1.
void sweep(std::vector<double>& line, const std::vector<double>& speed, int n,
           double dtdx, Limiter limiter, std::vector<double>& out) {
  const auto jump = [&](int k) { return line[k + 1] - line[k]; };  // face k
  for (int i = 1; i <= n; ++i) {
    double update = 0.0;
    double corr[2] = {0.0, 0.0};
    for (int side = 0; side < 2; ++side) {
      const int k = i + side;  // face i-1/2 then i+1/2
      const double s = speed[k];
      const double w = jump(k);
      if (side == 0 && s > 0.0) update += s * w;  // right-going into cell i
      if (side == 1 && s < 0.0) update += s * w;  // left-going into cell i
      double wl = w;
      if (limiter != Limiter::none && w != 0.0) {
        const double upwind = s > 0.0 ? jump(k - 1) : jump(k + 1);
        wl = apply_limiter(upwind / w, limiter) * w;
      }
      const double as = std::fabs(s);
      corr[side] = 0.5 * as * (1.0 - dtdx * as) * wl;
    }
    out[i] = line[i + 1] - dtdx * update - dtdx * (corr[1] - corr[0]);
  }
}

}  // namespace

TracerStepper::TracerStepper(const Grid& grid) : grid_(grid), tmp_(grid) {}

double TracerStepper::step(TracerField& c, const FaceVelocities& faces,
                           double dt, Limiter limiter, BoundaryKind boundary) {
  const Grid& g = c.grid();
  if (!(g == grid_)) {
    grid_ = g;
    tmp_ = TracerField(g);
  }
  const double dtdx = dt / g.dx;
  const double dtdy = dt / g.dy;
  double courant = 0.0;
  for (int j = 1; j <= g.ny; ++j)
    for (int i = 1; i <= g.nx + 1; ++i)
      courant = std::max(courant, dtdx * std::fabs(faces.u(i, j)));
  for (int j = 1; j <= g.ny + 1; ++j)
    for (int i = 1; i <= g.nx; ++i)
      courant = std::max(courant, dtdy * std::fabs(faces.v(i, j)));
  if (courant > 1.0) {
    std::ostringstream msg;
    msg << "tracer CFL violation: face Courant number " << courant;
    throw CflError(msg.str());
  }

  const int nmax = std::max(g.nx, g.ny);
  line_.assign(nmax + 4, 0.0);
  speed_.assign(nmax + 2, 0.0);
  out_.assign(nmax + 2, 0.0);

  fill_ghosts(c, boundary, Parity::even);
  tmp_ = c;
  for (int j = 1; j <= g.ny; ++j) {
    for (int k = -1; k <= g.nx + 2; ++k) line_[k + 1] = c(k, j);
    for (int k = 1; k <= g.nx + 1; ++k) speed_[k] = faces.u(k, j);
    sweep(line_, speed_, g.nx, dtdx, limiter, out_);
    for (int i = 1; i <= g.nx; ++i) tmp_(i, j) = out_[i];
  }

  fill_ghosts(tmp_, boundary, Parity::even);
  for (int i = 1; i <= g.nx; ++i) {
    for (int k = -1; k <= g.ny + 2; ++k) line_[k + 1] = tmp_(i, k);
    for (int k = 1; k <= g.ny + 1; ++k) speed_[k] = faces.v(i, k);
    sweep(line_, speed_, g.ny, dtdy, limiter, out_);
    for (int j = 1; j <= g.ny; ++j) c(i, j) = out_[j];
  }
  fill_ghosts(c, boundary, Parity::even);
  return courant;
}

TracerField step_tracer(const TracerField& c, const FaceVelocities& faces,
                        double dt, Limiter limiter, BoundaryKind boundary) {
  TracerField out = c;
  TracerStepper stepper(c.grid());
  stepper.step(out, faces, dt, limiter, boundary);
  return out;
}

Centroid tracer_centroid(const TracerField& c) {
  const Grid& g = c.grid();
  Centroid out;
  double sx = 0.0, sy = 0.0;
  c.for_each_interior([&](int i, int j, double v) {
    out.mass += v;
    sx += v * g.xc(i);
    sy += v * g.yc(j);
  });
  if (out.mass > 0.0) {
    out.x = sx / out.mass;
    out.y = sy / out.mass;
  }
  return out;
}

CoupledStats run_coupled(FractionalStepSolver& solver, TracerField& c,
                         const CoupledOptions& opts,
                         const std::function<void(const TracerSnapshot&)>& on_snapshot,
                         const std::function<void(const TracerField&)>& per_step) {
  if (!(c.grid() == solver.grid())) {
    throw Error("tracer field does not match the solver grid");
  }
  const BoundaryKind boundary = solver.config().boundary;
  TracerStepper stepper(c.grid());
  fill_ghosts(c, boundary, Parity::even);

  CoupledStats stats;
  stats.min_c = 1e300;
  stats.max_c = -1e300;
  const auto track = [&] {
    c.for_each_interior([&](int, int, double v) {
      stats.min_c = std::min(stats.min_c, v);
      stats.max_c = std::max(stats.max_c, v);
    });
  };
  track();

  std::vector<double> pending = opts.snapshot_days;
  std::sort(pending.begin(), pending.end());
  std::size_t next = 0;
  const double tol = 1e-6 * opts.dt;
  const auto emit = [&](double elapsed) {
    while (next < pending.size() &&
           pending[next] * kSecondsPerDay <= elapsed + tol) {
      if (on_snapshot) on_snapshot({elapsed, c});
      ++next;
    }
  };
  emit(0.0);

  const double t0 = solver.time();
  double elapsed = 0.0;
  while (opts.t_end - elapsed > tol) {
    const double dt = std::min(opts.dt, opts.t_end - elapsed);
    solver.advance(dt);
    const FaceVelocities faces = edge_velocities(solver.state());
    stepper.step(c, faces, dt, opts.tracer_limiter, boundary);
    elapsed = solver.time() - t0;
    ++stats.steps;
    track();
    if (per_step) per_step(c);
    emit(elapsed);
  }
  return stats;
}

}  // namespace gyre
