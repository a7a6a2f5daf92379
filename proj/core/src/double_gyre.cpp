#include "gyre/double_gyre.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <cmath>
#include <cstdio>

#include "gyre/boundary.hpp"
#include "gyre/errors.hpp"
#include "gyre/io.hpp"

namespace gyre {

PhysParams GyreSetup::params() const {
  PhysParams p;
  p.g_r = g_r;
  p.f0 = f0;
  p.beta = beta;
  p.nu = nu;
  p.beta_origin = beta_origin;
  p.forcing = WindForcing{tau0, rho, h0, length};
  return p;
}

double default_gyre_dt(double dx) { return 360.0 * dx / 10e3; }

RunConfig gyre_config(const GyreSetup& setup, const GyreRunOptions& opts) {
  if (!(opts.dx > 0.0)) throw ConfigError("dx must be positive");
  RunConfig cfg;
  const int nx = static_cast<int>(std::lround(setup.width / opts.dx));
  const int ny = static_cast<int>(std::lround(setup.length / opts.dx));
  cfg.grid = {nx, ny, 0.0, setup.width, 0.0, setup.length};
  cfg.params = setup.params();
  if (opts.cfl) {
    if (opts.dt) throw ConfigError("give either dt or cfl, not both");
    cfg.cfl_target = opts.cfl;
  } else {
    cfg.dt = opts.dt.value_or(default_gyre_dt(opts.dx));
  }
  cfg.t_end = opts.t_end;
  cfg.splitting = opts.splitting;
  cfg.limiter = opts.limiter;
  cfg.boundary = BoundaryKind::solid_wall;
  cfg.output_every = opts.output_every;
  cfg.workers = opts.workers;
  return cfg;
}

ConservedField init_rest(const Grid& grid, const GyreSetup& setup) {
  ConservedField q(grid, State{setup.h0, 0.0, 0.0});
  return q;
}

ScalarField height_anomaly(const ConservedField& q, double h0) {
  ScalarField a(q.grid());
  q.for_each_interior([&](int i, int j, const State& s) { a(i, j) = s.h - h0; });
  return a;
}

double rossby_radius(const GyreSetup& setup, double y) {
  const double f = setup.f0 + setup.beta * (y - setup.beta_origin.value_or(0.0));
  if (!(f > 0.0)) throw Error("Rossby radius needs f > 0");
  return std::sqrt(setup.g_r * setup.h0) / f;
}

ScalarField vorticity(const ConservedField& q, StreamBasis basis) {
  ConservedField filled = q;
  fill_ghost_solid_wall(filled);
  const Grid& g = q.grid();
  ScalarField u(g), v(g);
  for (int j = 0; j <= g.ny + 1; ++j) {
    for (int i = 0; i <= g.nx + 1; ++i) {
      const State& s = filled(i, j);
      if (basis == StreamBasis::velocity) {
        require_positive_depth(s.h, i, j);
        u(i, j) = s.hu / s.h;
        v(i, j) = s.hv / s.h;
      } else {
        u(i, j) = s.hu;
        v(i, j) = s.hv;
      }
    }
  }
  ScalarField zeta(g);
  zeta.for_each_interior([&](int i, int j, double& z) {
    z = (v(i + 1, j) - v(i - 1, j)) / (2.0 * g.dx) -
        (u(i, j + 1) - u(i, j - 1)) / (2.0 * g.dy);
  });
  return zeta;
}

namespace {

// Five-point Laplacian with psi = 0 on the cell faces of the walls.
double laplacian_at(const ScalarField& psi, int i, int j) {
  const Grid& g = psi.grid();
  const auto at = [&](int a, int b) {
    if (a < 1 || a > g.nx || b < 1 || b > g.ny) {
      const int ia = a < 1 ? 1 : (a > g.nx ? g.nx : a);
      const int jb = b < 1 ? 1 : (b > g.ny ? g.ny : b);
      return -psi(ia, jb);
    }
    return psi(a, b);
  };
  const double c = psi(i, j);
  return (at(i - 1, j) - 2.0 * c + at(i + 1, j)) / (g.dx * g.dx) +
         (at(i, j - 1) - 2.0 * c + at(i, j + 1)) / (g.dy * g.dy);
}

}  // namespace

double poisson_residual(const ScalarField& psi, const ScalarField& rhs) {
  double num = 0.0;
  double den = 0.0;
  rhs.for_each_interior([&](int i, int j, double r) {
    const double e = laplacian_at(psi, i, j) - r;
    num += e * e;
    den += r * r;
  });
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

StreamFunction solve_stream_function(const ScalarField& rhs, double tolerance) {
  const Grid& g = rhs.grid();
  const int n = g.nx * g.ny;
  const auto id = [&](int i, int j) { return (j - 1) * g.nx + (i - 1); };
  const double ax = 1.0 / (g.dx * g.dx);
  const double ay = 1.0 / (g.dy * g.dy);

  // Assemble -lap, which is symmetric positive definite.
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(n) * 5);
  Eigen::VectorXd b(n);
  for (int j = 1; j <= g.ny; ++j) {
    for (int i = 1; i <= g.nx; ++i) {
      const int row = id(i, j);
      double diag = 2.0 * ax + 2.0 * ay;
      if (i > 1) entries.emplace_back(row, id(i - 1, j), -ax); else diag += ax;
      if (i < g.nx) entries.emplace_back(row, id(i + 1, j), -ax); else diag += ax;
      if (j > 1) entries.emplace_back(row, id(i, j - 1), -ay); else diag += ay;
      if (j < g.ny) entries.emplace_back(row, id(i, j + 1), -ay); else diag += ay;
      entries.emplace_back(row, row, diag);
      b[row] = -rhs(i, j);
    }
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(tolerance);
  cg.setMaxIterations(std::max(1000, 20 * n));
  cg.compute(a);
  const Eigen::VectorXd x = cg.solve(b);
  if (cg.info() != Eigen::Success) {
    throw Error("stream function solve did not converge (residual " +
                std::to_string(cg.error()) + ")");
  }

  StreamFunction out;
  out.psi = ScalarField(g);
  out.psi.for_each_interior([&](int i, int j, double& p) { p = x[id(i, j)]; });
  fill_ghosts(out.psi, BoundaryKind::solid_wall, Parity::odd);
  out.iterations = static_cast<int>(cg.iterations());
  out.relative_residual = poisson_residual(out.psi, rhs);
  return out;
}

StreamFunction stream_function(const ConservedField& q, StreamBasis basis,
                               double tolerance) {
  return solve_stream_function(vorticity(q, basis), tolerance);
}

AnomalyExtremum anomaly_extremum(const ScalarField& anomaly) {
  AnomalyExtremum e;
  double best = -1.0;
  anomaly.for_each_interior([&](int i, int j, double a) {
    if (std::fabs(a) > best) {
      best = std::fabs(a);
      e.i = i;
      e.j = j;
      e.value = a;
    }
  });
  e.distance_from_west = anomaly.grid().xc(e.i) - anomaly.grid().x0;
  return e;
}

GyreSplit gyre_split(const ScalarField& anomaly) {
  const Grid& g = anomaly.grid();
  const double mid = g.y0 + 0.5 * g.y_length();
  GyreSplit s;
  double south = 0.0, north = 0.0;
  long ns = 0, nn = 0;
  double vmax = -1e300, vmin = 1e300;
  double ymax = 0.0, ymin = 0.0;
  anomaly.for_each_interior([&](int, int j, double a) {
    const double y = g.yc(j);
    if (y < mid) {
      south += a;
      ++ns;
    } else {
      north += a;
      ++nn;
    }
    if (a > vmax) {
      vmax = a;
      ymax = y;
    }
    if (a < vmin) {
      vmin = a;
      ymin = y;
    }
  });
  s.south_mean = ns ? south / ns : 0.0;
  s.north_mean = nn ? north / nn : 0.0;
  s.max_in_south = ymax < mid;
  s.min_in_north = ymin >= mid;
  return s;
}

namespace {

double max_abs_velocity(const ConservedField& q) {
  double m = 0.0;
  q.for_each_interior([&](int, int, const State& s) {
    m = std::max({m, std::fabs(s.hu / s.h), std::fabs(s.hv / s.h)});
  });
  return m;
}

}  // namespace

GyreRunResult run_gyre(const GyreSetup& setup, const GyreRunOptions& opts,
                       double snapshot_every,
                       const std::optional<ConservedField>& initial,
                       const std::function<void(const GyreSnapshot&)>& on_snapshot) {
  FractionalStepSolver solver(gyre_config(setup, opts));
  solver.set_state(initial ? *initial : init_rest(solver.grid(), setup));

  GyreRunResult result;
  const double t_end = opts.t_end;
  const double g_r = solver.config().params.g_r;
  const auto next_dt = [&] {
    if (opts.cfl) return stable_dt(solver.state(), g_r, *opts.cfl);
    return *solver.config().dt;
  };
  double dt = next_dt();
  const auto snap = [&] {
    GyreSnapshot s{solver.time(), solver.state()};
    if (on_snapshot) on_snapshot(s);
    result.snapshots.push_back(std::move(s));
  };
  snap();
  double next_snapshot = snapshot_every > 0.0 ? snapshot_every : t_end;
  while (t_end - solver.time() > 1e-9 * dt) {
    dt = next_dt();
    const double target = std::min(next_snapshot, t_end);
    double step = dt;
    if (target - solver.time() <= dt * (1.0 + 1e-9)) step = target - solver.time();
    const HyperbolicStepReport report = solver.advance(step);
    const double umax = max_abs_velocity(solver.state());
    result.max_abs_u = std::max(result.max_abs_u, umax);
    if (!std::isfinite(umax)) {
      result.finite = false;
      break;
    }
    const bool at_target = std::fabs(solver.time() - target) <= 1e-6 * dt;
    if (solver.steps_taken() % opts.output_every == 0 || at_target) {
      result.records.push_back(solver.record(report, step));
    }
    if (at_target && target == next_snapshot) {
      snap();
      next_snapshot += snapshot_every;
    }
  }
  result.final_state = solver.state();
  return result;
}

void write_gyre_snapshot(const std::filesystem::path& dir,
                         const GyreSnapshot& snap, const GyreSetup& setup) {
  std::filesystem::create_directories(dir);
  const Grid& g = snap.state.grid();
  FieldDump dump;
  dump.grid = g;
  dump.t = snap.t;
  dump.names = {"h_anom", "u", "v", "psi", "psi_transport"};
  ScalarField u(g), v(g);
  snap.state.for_each_interior([&](int i, int j, const State& s) {
    u(i, j) = s.hu / s.h;
    v(i, j) = s.hv / s.h;
  });
  dump.fields = {height_anomaly(snap.state, setup.h0), u, v,
                 stream_function(snap.state, StreamBasis::velocity).psi,
                 stream_function(snap.state, StreamBasis::transport).psi};
  char name[64];
  std::snprintf(name, sizeof name, "gyre_day%05ld",
                std::lround(snap.t / kSecondsPerDay));
  write_field_csv(dir / (std::string(name) + ".csv"), dump);
  write_field_vtk(dir / (std::string(name) + ".vtk"), dump, "u", "v");
}

}  // namespace gyre
