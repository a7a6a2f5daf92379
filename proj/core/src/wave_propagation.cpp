#include "gyre/wave_propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gyre/errors.hpp"
#include "parallel.hpp"

namespace gyre {

double apply_limiter(double theta, Limiter kind) {
  switch (kind) {
    case Limiter::none:
      return 1.0;
    case Limiter::minmod:
      return std::max(0.0, std::min(1.0, theta));
    case Limiter::mc:
      return std::max(0.0, std::min({0.5 * (1.0 + theta), 2.0, 2.0 * theta}));
    case Limiter::superbee:
      return std::max({0.0, std::min(1.0, 2.0 * theta), std::min(2.0, theta)});
  }
  return 1.0;
}

namespace {

// One line of cells -1..n+2 in the x-frame, with per-interface results for
// interfaces 0..n+2 (interface k sits between cells k-1 and k).
struct LineScratch {
  explicit LineScratch(int n)
      : q(n + 4), waves(n + 3), speeds(n + 3), amdq(n + 3), apdq(n + 3),
        roe(n + 3), minus(n + 2), plus(n + 2), lower(n + 2), upper(n + 2) {}

  std::vector<State> q;  // cell k at q[k + 1]
  std::vector<std::array<State, 3>> waves;
  std::vector<std::array<double, 3>> speeds;
  std::vector<State> amdq, apdq;
  std::vector<RoeState> roe;
  std::vector<State> minus, plus;  // interfaces 1..n+1
  std::vector<State> lower, upper;  // transverse, cells 1..n
};

// Returns the largest |s| over interfaces 1..n+1.
double sweep_line(LineScratch& s, int n, double dtdx, double g_r,
                  const HyperbolicOptions& opts) {
  WaveDecomposition wd;
  for (int k = 0; k <= n + 2; ++k) {
    detail::solve_normal(s.q[k], s.q[k + 1], g_r, opts.entropy_fix, wd,
                         s.roe[k]);
    s.waves[k] = wd.waves;
    s.speeds[k] = wd.speeds;
    s.amdq[k] = wd.fluct_minus;
    s.apdq[k] = wd.fluct_plus;
  }

  double smax = 0.0;
  for (int k = 1; k <= n + 1; ++k) {
    State correction;
    for (int p = 0; p < 3; ++p) {
      const double sp = s.speeds[k][p];
      const double abs_s = std::fabs(sp);
      smax = std::max(smax, abs_s);
      State w = s.waves[k][p];
      if (opts.limiter != Limiter::none) {
        const double norm2 = dot(w, w);
        if (norm2 > 0.0) {
          const int upwind = sp > 0.0 ? k - 1 : k + 1;
          const double theta = dot(s.waves[upwind][p], w) / norm2;
          w *= apply_limiter(theta, opts.limiter);
        }
      }
      correction += (abs_s * (1.0 - dtdx * abs_s)) * w;
    }
    s.minus[k] = s.amdq[k] + 0.5 * correction;
    s.plus[k] = 0.5 * correction - s.apdq[k];
    if (opts.transverse) {
      // Reuse the fluctuation slots for the increment + correction waves.
      s.amdq[k] += correction;
      s.apdq[k] -= correction;
    }
  }

  std::fill(s.lower.begin(), s.lower.end(), State{});
  std::fill(s.upper.begin(), s.upper.end(), State{});
  if (opts.transverse) {
    const double half = 0.5 * dtdx;
    for (int k = 1; k <= n + 1; ++k) {
      if (k - 1 >= 1) {
        const TransverseSplit t = detail::split_transverse(s.roe[k], s.amdq[k]);
        s.lower[k - 1] -= half * t.minus;
        s.upper[k - 1] -= half * t.plus;
      }
      if (k <= n) {
        const TransverseSplit t = detail::split_transverse(s.roe[k], s.apdq[k]);
        s.lower[k] -= half * t.minus;
        s.upper[k] -= half * t.plus;
      }
    }
  }
  return smax;
}

}  // namespace

HyperbolicStepper::HyperbolicStepper(const Grid& grid) { resize(grid); }

void HyperbolicStepper::resize(const Grid& grid) {
  grid_ = grid;
  x_minus_ = ConservedField(grid);
  x_plus_ = ConservedField(grid);
  y_minus_ = ConservedField(grid);
  y_plus_ = ConservedField(grid);
  from_x_lower_ = ConservedField(grid);
  from_x_upper_ = ConservedField(grid);
  from_y_left_ = ConservedField(grid);
  from_y_right_ = ConservedField(grid);
}

HyperbolicStepReport HyperbolicStepper::step(const ConservedField& in,
                                             ConservedField& out, double dt,
                                             double g_r,
                                             const HyperbolicOptions& opts) {
  const Grid& g = in.grid();
  if (!(g == grid_)) resize(g);
  if (!(out.grid() == g)) out = ConservedField(g);
  if (!(dt > 0.0)) throw Error("hyperbolic step needs dt > 0");

  const int nx = g.nx;
  const int ny = g.ny;
  const double dtdx = dt / g.dx;
  const double dtdy = dt / g.dy;
  const int workers = std::max(1, opts.workers);
  double sx = 0.0;
  double sy = 0.0;

  // x-sweeps over interior rows and one ghost row on each side.
  GYRE_PRAGMA(omp parallel num_threads(workers))
  {
    LineScratch s(nx);
    GYRE_PRAGMA(omp for schedule(static) reduction(max : sx))
    for (int j = 0; j <= ny + 1; ++j) {
      const State* row = in.row(j);
      std::copy(row, row + nx + 4, s.q.begin());
      const double smax = sweep_line(s, nx, dtdx, g_r, opts);
      if (j >= 1 && j <= ny) {
        sx = std::max(sx, smax);
        for (int k = 1; k <= nx + 1; ++k) {
          x_minus_(k, j) = s.minus[k];
          x_plus_(k, j) = s.plus[k];
        }
      }
      for (int i = 1; i <= nx; ++i) {
        from_x_lower_(i, j) = s.lower[i];
        from_x_upper_(i, j) = s.upper[i];
      }
    }
  }

  // y-sweeps over interior columns and one ghost column on each side.
  GYRE_PRAGMA(omp parallel num_threads(workers))
  {
    LineScratch s(ny);
    GYRE_PRAGMA(omp for schedule(static) reduction(max : sy))
    for (int i = 0; i <= nx + 1; ++i) {
      for (int k = -1; k <= ny + 2; ++k) s.q[k + 1] = swap_momenta(in(i, k));
      const double smax = sweep_line(s, ny, dtdy, g_r, opts);
      if (i >= 1 && i <= nx) {
        sy = std::max(sy, smax);
        for (int k = 1; k <= ny + 1; ++k) {
          y_minus_(i, k) = swap_momenta(s.minus[k]);
          y_plus_(i, k) = swap_momenta(s.plus[k]);
        }
      }
      for (int k = 1; k <= ny; ++k) {
        from_y_left_(i, k) = swap_momenta(s.lower[k]);
        from_y_right_(i, k) = swap_momenta(s.upper[k]);
      }
    }
  }

  HyperbolicStepReport report;
  report.max_speed = std::max(sx, sy);
  report.max_courant = std::max(dtdx * sx, dtdy * sy);
  report.limiter_used = opts.limiter;
  if (report.max_courant > 1.0) {
    std::ostringstream msg;
    msg << "CFL violation: Courant number " << report.max_courant
        << " exceeds 1 (dt=" << dt << ", max speed=" << report.max_speed << ")";
    throw CflError(msg.str());
  }

  const bool walls = opts.closed_walls;
  bool finite = true;
  GYRE_PRAGMA(omp parallel for num_threads(workers) schedule(static) reduction(&& : finite))
  for (int j = 1; j <= ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const double open_l = walls && i == 1 ? 0.0 : 1.0;
      const double open_r = walls && i == nx ? 0.0 : 1.0;
      const double open_b = walls && j == 1 ? 0.0 : 1.0;
      const double open_t = walls && j == ny ? 0.0 : 1.0;
      const State f_right =
          x_minus_(i + 1, j) +
          open_r * (from_y_right_(i, j) + from_y_left_(i + 1, j));
      const State f_left =
          x_plus_(i, j) +
          open_l * (from_y_right_(i - 1, j) + from_y_left_(i, j));
      const State g_top =
          y_minus_(i, j + 1) +
          open_t * (from_x_upper_(i, j) + from_x_lower_(i, j + 1));
      const State g_bottom =
          y_plus_(i, j) +
          open_b * (from_x_upper_(i, j - 1) + from_x_lower_(i, j));
      const State q =
          in(i, j) - (dtdx * (f_right - f_left) + dtdy * (g_top - g_bottom));
      out(i, j) = q;
      finite = finite && std::isfinite(q.h) && std::isfinite(q.hu) &&
               std::isfinite(q.hv);
    }
  }
  if (!finite) throw InstabilityError("non-finite state after hyperbolic step");
  return report;
}

std::pair<ConservedField, HyperbolicStepReport> step_hyperbolic(
    const ConservedField& q, double dt, double g_r,
    const HyperbolicOptions& opts) {
  HyperbolicStepper stepper(q.grid());
  ConservedField out = q;
  const HyperbolicStepReport report = stepper.step(q, out, dt, g_r, opts);
  return {std::move(out), report};
}

WaveSpeeds max_wave_speed(const ConservedField& q, double g_r) {
  WaveSpeeds s;
  q.for_each_interior([&](int i, int j, const State& c) {
    require_positive_depth(c.h, i, j);
    const double cel = std::sqrt(g_r * c.h);
    s.x = std::max(s.x, std::fabs(c.hu / c.h) + cel);
    s.y = std::max(s.y, std::fabs(c.hv / c.h) + cel);
  });
  return s;
}

double stable_dt(const WaveSpeeds& speeds, const Grid& grid, double cfl_target) {
  if (!(cfl_target > 0.0 && cfl_target <= 1.0)) {
    throw Error("cfl_target must lie in (0, 1]");
  }
  const double rate = speeds.x / grid.dx + speeds.y / grid.dy;
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl_target / rate;
}

double stable_dt(const ConservedField& q, double g_r, double cfl_target) {
  return stable_dt(max_wave_speed(q, g_r), q.grid(), cfl_target);
}

}  // namespace gyre
