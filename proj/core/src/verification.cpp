#include "gyre/verification.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>

#include "gyre/errors.hpp"
#include "gyre/splitting.hpp"

namespace gyre {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Five-point Gauss-Legendre rule on [-1/2, 1/2].
constexpr std::array<double, 5> kGaussNodes{
    -0.4530899229693320, -0.2692346550528415, 0.0, 0.2692346550528415,
    0.4530899229693320};
constexpr std::array<double, 5> kGaussWeights{
    0.1184634425280945, 0.2393143352496832, 0.2844444444444444,
    0.2393143352496832, 0.1184634425280945};

}  // namespace

Primitive exact_solution(double x, double y, double t, const AnsatzParams& p) {
  const double amp = p.eta + p.epsilon * std::sin(p.omega * t);
  const double cx = std::cos(kTwoPi * x);
  const double sx = std::sin(kTwoPi * x);
  const double cy = std::cos(kTwoPi * y);
  const double sy = std::sin(kTwoPi * y);
  return {std::exp(cx * cy), amp * cx * sy, -amp * sx * cy};
}

PhysParams nondimensional_params(const AnsatzParams& p) {
  PhysParams params;
  params.g_r = 1.0 / (p.froude * p.froude);
  params.nu = 1.0 / p.reynolds;
  params.f0 = 1.0 / p.rossby;
  params.beta = 0.0;
  params.forcing = p;
  return params;
}

ConservedField sample_exact(const Grid& grid, double t, const AnsatzParams& p,
                            SampleConvention convention) {
  ConservedField q(grid, State{1.0, 0.0, 0.0});
  q.for_each_interior([&](int i, int j, State& s) {
    const double xc = grid.xc(i);
    const double yc = grid.yc(j);
    if (convention == SampleConvention::point) {
      s = conserved(exact_solution(xc, yc, t, p));
      return;
    }
    State avg;
    for (std::size_t a = 0; a < kGaussNodes.size(); ++a) {
      for (std::size_t b = 0; b < kGaussNodes.size(); ++b) {
        const State local = conserved(exact_solution(
            xc + kGaussNodes[a] * grid.dx, yc + kGaussNodes[b] * grid.dy, t, p));
        avg += (kGaussWeights[a] * kGaussWeights[b]) * local;
      }
    }
    s = avg;
  });
  return q;
}

double l2_error(std::span<const double> numeric, std::span<const double> exact) {
  if (numeric.size() != exact.size()) {
    throw Error("l2_error: size mismatch (" + std::to_string(numeric.size()) +
                " vs " + std::to_string(exact.size()) + ")");
  }
  if (numeric.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < numeric.size(); ++k) {
    const double e = numeric[k] - exact[k];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(numeric.size()));
}

double l2_error(const ScalarField& numeric, const ScalarField& exact) {
  if (!numeric.grid().same_shape(exact.grid())) {
    throw Error("l2_error: grid shape mismatch");
  }
  std::vector<double> a, b;
  a.reserve(static_cast<std::size_t>(numeric.nx()) * numeric.ny());
  b.reserve(a.capacity());
  numeric.for_each_interior([&](int i, int j, double v) {
    a.push_back(v);
    b.push_back(exact(i, j));
  });
  return l2_error(a, b);
}

RunConfig verification_config(int n, double dt, double t_end,
                              const AnsatzParams& p,
                              const VerificationOptions& opts) {
  RunConfig cfg;
  cfg.grid = {n, n, 0.0, 1.0, 0.0, 1.0};
  cfg.params = nondimensional_params(p);
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.splitting = opts.splitting;
  cfg.limiter = opts.limiter;
  cfg.boundary = BoundaryKind::periodic;
  cfg.output_every = 1 << 30;
  cfg.workers = opts.workers;
  return cfg;
}

double refinement_dt(int n, double base_dt) {
  const double ratio = 10.0 / n;
  return base_dt * ratio * ratio;
}

LevelResult run_verification_level(int n, double dt, double t_end,
                                   const AnsatzParams& p,
                                   const VerificationOptions& opts) {
  const long steps = std::max(1L, std::lround(t_end / dt));
  FractionalStepSolver solver(verification_config(
      n, t_end / static_cast<double>(steps), t_end, p, opts));
  const Grid& grid = solver.grid();
  solver.set_state(sample_exact(grid, 0.0, p, opts.convention));

  const auto start = std::chrono::steady_clock::now();
  solver.run();
  const auto stop = std::chrono::steady_clock::now();

  const ConservedField exact = sample_exact(grid, t_end, p, opts.convention);
  ScalarField h_num(grid), h_ex(grid), u_num(grid), u_ex(grid);
  solver.state().for_each_interior([&](int i, int j, const State& s) {
    const State& e = exact(i, j);
    h_num(i, j) = s.h;
    h_ex(i, j) = e.h;
    u_num(i, j) = s.hu / s.h;
    u_ex(i, j) = e.hu / e.h;
  });

  LevelResult result;
  result.state = solver.state();
  result.h_error = l2_error(h_num, h_ex);
  result.u_error = l2_error(u_num, u_ex);
  result.seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

std::vector<ConvergenceRow> convergence_study(std::span<const int> levels,
                                              double base_dt, double t_end,
                                              const AnsatzParams& p,
                                              const VerificationOptions& opts) {
  std::vector<ConvergenceRow> rows;
  for (const int n : levels) {
    if (!rows.empty() && n <= rows.back().n) {
      throw Error("convergence levels must increase");
    }
    ConvergenceRow row;
    row.n = n;
    row.dt = refinement_dt(n, base_dt);
    LevelResult level;
    try {
      level = run_verification_level(n, row.dt, t_end, p, opts);
    } catch (const Error& e) {
      throw Error("convergence level N=" + std::to_string(n) + " failed: " +
                  e.what());
    }
    row.error = level.h_error;
    row.seconds = level.seconds;
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      row.observed_order = std::log(prev.error / row.error) /
                           std::log(static_cast<double>(n) / prev.n);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<EtaRow> eta_sensitivity_study(std::span<const double> etas, int n,
                                          double dt, double t_end,
                                          const AnsatzParams& base,
                                          const VerificationOptions& opts) {
  VerificationOptions pinned = opts;
  pinned.workers = 1;
  std::vector<EtaRow> rows;
  for (const double eta : etas) {
    AnsatzParams p = base;
    p.eta = eta;
    p.epsilon = 1.0 - eta;
    const LevelResult level = run_verification_level(n, dt, t_end, p, pinned);
    rows.push_back({eta, level.u_error, level.seconds});
  }
  return rows;
}

}  // namespace gyre
