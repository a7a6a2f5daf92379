#include "gyre/source_step.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gyre/errors.hpp"
#include "parallel.hpp"

namespace gyre {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Time-dependent amplitude eta + eps sin(wt) and its derivative.
struct Amplitude {
  double value;
  double rate;
};

Amplitude amplitude(double t, const ManufacturedForcing& m) {
  return {m.eta + m.epsilon * std::sin(m.omega * t),
          m.epsilon * m.omega * std::cos(m.omega * t)};
}

ForcingValue manufactured_from_basis(double sx, double cx, double sy, double cy,
                                     double h_exact, Amplitude a,
                                     const ManufacturedForcing& m) {
  const double pi = std::numbers::pi;
  const double amp = a.value;
  const double damp = a.rate;
  const double visc = 8.0 * pi * pi / m.reynolds;
  const double rot = 1.0 / m.rossby;
  const double grav = kTwoPi / (m.froude * m.froude);
  ForcingValue f;
  f.fu = damp * cx * sy - kTwoPi * amp * amp * sx * cx + visc * amp * cx * sy +
         rot * amp * sx * cy - grav * sx * cy * h_exact;
  f.fv = -damp * sx * cy - kTwoPi * amp * amp * sy * cy - visc * amp * sx * cy +
         rot * amp * cx * sy - grav * cx * sy * h_exact;
  return f;
}

double coriolis_at(const PhysParams& p, double y, double origin) {
  return p.f0 + p.beta * (y - origin);
}

// Shared by the cached and uncached paths so both produce the same bits.
template <class Coriolis, class Forcing>
void eval_rhs_impl(const ConservedField& q, const VelocityFields& vel,
                   double nu, Coriolis&& coriolis, Forcing&& forcing,
                   SourceRhs& out, int workers) {
  const Grid& g = q.grid();
  if (!(out.dhu.grid() == g)) out.dhu = ScalarField(g);
  if (!(out.dhv.grid() == g)) out.dhv = ScalarField(g);
  const double idx2 = 1.0 / (g.dx * g.dx);
  const double idy2 = 1.0 / (g.dy * g.dy);
  GYRE_PRAGMA(omp parallel for num_threads(workers) schedule(static))
  for (int j = 1; j <= g.ny; ++j) {
    const double f = coriolis(j);
    for (int i = 1; i <= g.nx; ++i) {
      const State& c = q(i, j);
      const double u = vel.u(i, j);
      const double v = vel.v(i, j);
      const double lap_u = (vel.u(i - 1, j) - 2.0 * u + vel.u(i + 1, j)) * idx2 +
                           (vel.u(i, j - 1) - 2.0 * u + vel.u(i, j + 1)) * idy2;
      const double lap_v = (vel.v(i - 1, j) - 2.0 * v + vel.v(i + 1, j)) * idx2 +
                           (vel.v(i, j - 1) - 2.0 * v + vel.v(i, j + 1)) * idy2;
      const ForcingValue fv = forcing(i, j);
      out.dhu(i, j) = f * c.hv + nu * c.h * lap_u + c.h * fv.fu;
      out.dhv(i, j) = -f * c.hu + nu * c.h * lap_v + c.h * fv.fv;
    }
  }
}

}  // namespace

ForcingValue wind_forcing(double y, const WindForcing& spec) {
  return {-spec.tau0 / (spec.rho * spec.h0) * std::cos(kTwoPi * y / spec.length),
          0.0};
}

ForcingValue manufactured_forcing(double x, double y, double t,
                                  const ManufacturedForcing& spec) {
  const double cx = std::cos(kTwoPi * x);
  const double cy = std::cos(kTwoPi * y);
  return manufactured_from_basis(std::sin(kTwoPi * x), cx, std::sin(kTwoPi * y),
                                 cy, std::exp(cx * cy), amplitude(t, spec), spec);
}

void eval_rhs(const ConservedField& q, const VelocityFields& vel,
              const PhysParams& params, double t, SourceRhs& out) {
  const Grid& g = q.grid();
  const double origin = params.beta_origin.value_or(g.y0);
  const auto coriolis = [&](int j) { return coriolis_at(params, g.yc(j), origin); };
  const auto forcing = [&](int i, int j) -> ForcingValue {
    if (const auto* w = std::get_if<WindForcing>(&params.forcing)) {
      return wind_forcing(g.yc(j), *w);
    }
    if (const auto* m = std::get_if<ManufacturedForcing>(&params.forcing)) {
      return manufactured_forcing(g.xc(i), g.yc(j), t, *m);
    }
    return {};
  };
  eval_rhs_impl(q, vel, params.nu, coriolis, forcing, out, 1);
}

SourceRhs eval_rhs(const ConservedField& q, const VelocityFields& vel,
                   const PhysParams& params, double t) {
  SourceRhs out;
  eval_rhs(q, vel, params, t, out);
  return out;
}

SourceStepper::SourceStepper(const Grid& grid, const PhysParams& params)
    : grid_(grid), params_(params) {
  const double origin = params.beta_origin.value_or(grid.y0);
  coriolis_.assign(grid.ny + 1, 0.0);
  for (int j = 1; j <= grid.ny; ++j) {
    coriolis_[j] = coriolis_at(params, grid.yc(j), origin);
  }
  if (const auto* w = std::get_if<WindForcing>(&params.forcing)) {
    wind_.assign(grid.ny + 1, 0.0);
    for (int j = 1; j <= grid.ny; ++j) wind_[j] = wind_forcing(grid.yc(j), *w).fu;
  }
  if (std::holds_alternative<ManufacturedForcing>(params.forcing)) {
    sin_x_.assign(grid.nx + 1, 0.0);
    cos_x_.assign(grid.nx + 1, 0.0);
    sin_y_.assign(grid.ny + 1, 0.0);
    cos_y_.assign(grid.ny + 1, 0.0);
    for (int i = 1; i <= grid.nx; ++i) {
      sin_x_[i] = std::sin(kTwoPi * grid.xc(i));
      cos_x_[i] = std::cos(kTwoPi * grid.xc(i));
    }
    for (int j = 1; j <= grid.ny; ++j) {
      sin_y_[j] = std::sin(kTwoPi * grid.yc(j));
      cos_y_[j] = std::cos(kTwoPi * grid.yc(j));
    }
    h_exact_.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
    for (int j = 1; j <= grid.ny; ++j) {
      for (int i = 1; i <= grid.nx; ++i) {
        h_exact_[static_cast<std::size_t>(j - 1) * grid.nx + (i - 1)] =
            std::exp(cos_x_[i] * cos_y_[j]);
      }
    }
  }
}

void SourceStepper::eval(const ConservedField& q, const VelocityFields& vel,
                         double t, SourceRhs& out) const {
  const auto coriolis = [&](int j) { return coriolis_[j]; };
  switch (params_.forcing.index()) {
    case 1: {
      const auto forcing = [&](int, int j) { return ForcingValue{wind_[j], 0.0}; };
      eval_rhs_impl(q, vel, params_.nu, coriolis, forcing, out, workers);
      return;
    }
    case 2: {
      const auto& m = std::get<ManufacturedForcing>(params_.forcing);
      const Amplitude a = amplitude(t, m);
      const auto forcing = [&](int i, int j) {
        const double he =
            h_exact_[static_cast<std::size_t>(j - 1) * grid_.nx + (i - 1)];
        return manufactured_from_basis(sin_x_[i], cos_x_[i], sin_y_[j],
                                       cos_y_[j], he, a, m);
      };
      eval_rhs_impl(q, vel, params_.nu, coriolis, forcing, out, workers);
      return;
    }
    default: {
      const auto forcing = [](int, int) { return ForcingValue{}; };
      eval_rhs_impl(q, vel, params_.nu, coriolis, forcing, out, workers);
      return;
    }
  }
}

namespace {

double max_momentum(const ConservedField& q) {
  double m = 0.0;
  q.for_each_interior([&](int, int, const State& s) {
    m = std::max({m, std::fabs(s.hu), std::fabs(s.hv)});
  });
  return m;
}

}  // namespace

void SourceStepper::advance(ConservedField& q, double dt, double t,
                            BoundaryKind boundary) {
  if (!(q.grid() == grid_)) {
    throw Error("source stepper built for a different grid");
  }
  const double before = max_momentum(q);

  fill_ghosts(q, boundary);
  ghost_velocities(q, vel_);
  eval(q, vel_, t, k1_);

  stage_ = q;
  for (int j = 1; j <= grid_.ny; ++j) {
    for (int i = 1; i <= grid_.nx; ++i) {
      stage_(i, j).hu += dt * k1_.dhu(i, j);
      stage_(i, j).hv += dt * k1_.dhv(i, j);
    }
  }
  fill_ghosts(stage_, boundary);
  ghost_velocities(stage_, vel_);
  eval(stage_, vel_, t + dt, k2_);

  const double half = 0.5 * dt;
  bool finite = true;
  for (int j = 1; j <= grid_.ny; ++j) {
    for (int i = 1; i <= grid_.nx; ++i) {
      State& c = q(i, j);
      c.hu += half * (k1_.dhu(i, j) + k2_.dhu(i, j));
      c.hv += half * (k1_.dhv(i, j) + k2_.dhv(i, j));
      finite = finite && std::isfinite(c.hu) && std::isfinite(c.hv);
    }
  }
  const double after = max_momentum(q);
  if (!finite || (before > 0.0 && after > 1e6 * before)) {
    std::ostringstream msg;
    msg << "source step unstable at t=" << t << ": max momentum " << before
        << " -> " << after;
    throw InstabilityError(msg.str());
  }
}

void rk2_advance(ConservedField& q, double dt, const PhysParams& params,
                 double t, BoundaryKind boundary) {
  SourceStepper stepper(q.grid(), params);
  stepper.advance(q, dt, t, boundary);
}

}  // namespace gyre
