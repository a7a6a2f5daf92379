#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gyre/boundary.hpp"
#include "gyre/errors.hpp"
#include "gyre/source_step.hpp"
#include "gyre/verification.hpp"

using namespace gyre;

namespace {

constexpr double kPi = std::numbers::pi;

// Nested dual numbers: Dual<double> carries a first derivative, and
// Dual<Dual<double>> seeded twice in the same variable carries the second.
template <class T>
struct Dual {
  T a{}, b{};
};

template <class T> Dual<T> operator+(Dual<T> x, Dual<T> y) { return {x.a + y.a, x.b + y.b}; }
template <class T> Dual<T> operator-(Dual<T> x, Dual<T> y) { return {x.a - y.a, x.b - y.b}; }
template <class T> Dual<T> operator*(Dual<T> x, Dual<T> y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
template <class T> Dual<T> operator*(double s, Dual<T> x) { return {s * x.a, s * x.b}; }
template <class T> Dual<T> operator+(double s, Dual<T> x) { return {s + x.a, x.b}; }
template <class T> Dual<T> operator-(Dual<T> x) { return {-x.a, -x.b}; }

double dsin(double x) { return std::sin(x); }
double dcos(double x) { return std::cos(x); }
double dexp(double x) { return std::exp(x); }
template <class T> Dual<T> dsin(Dual<T> x) { return {dsin(x.a), dcos(x.a) * x.b}; }
template <class T> Dual<T> dcos(Dual<T> x) { return {dcos(x.a), -1.0 * (dsin(x.a) * x.b)}; }
template <class T> Dual<T> dexp(Dual<T> x) { const T e = dexp(x.a); return {e, e * x.b}; }

template <class T> T amp(T t, const AnsatzParams& p) { return p.eta + p.epsilon * dsin(p.omega * t); }
template <class T> T u_of(T x, T y, T t, const AnsatzParams& p) {
  return amp(t, p) * (dcos(2 * kPi * x) * dsin(2 * kPi * y));
}
template <class T> T v_of(T x, T y, T t, const AnsatzParams& p) {
  return -(amp(t, p) * (dsin(2 * kPi * x) * dcos(2 * kPi * y)));
}
template <class T> T h_of(T x, T y) { return dexp(dcos(2 * kPi * x) * dcos(2 * kPi * y)); }

using D1 = Dual<double>;
using D2 = Dual<D1>;

D1 var1(double v) { return {v, 1.0}; }
D1 con1(double v) { return {v, 0.0}; }
D2 var2(double v) { return {{v, 1.0}, {1.0, 0.0}}; }
D2 con2(double v) { return {{v, 0.0}, {0.0, 0.0}}; }

struct Derivs {
  double f, fx, fy, ft, fxx, fyy;
};

template <class F>
Derivs derivs(F f, double x, double y, double t) {
  Derivs d;
  d.f = f(con1(x), con1(y), con1(t)).a;
  d.fx = f(var1(x), con1(y), con1(t)).b;
  d.fy = f(con1(x), var1(y), con1(t)).b;
  d.ft = f(con1(x), con1(y), var1(t)).b;
  d.fxx = f(var2(x), con2(y), con2(t)).b.b;
  d.fyy = f(con2(x), var2(y), con2(t)).b.b;
  return d;
}

// Residual of the nondimensional momentum equations applied to the ansatz.
ForcingValue residual_forcing(double x, double y, double t, const AnsatzParams& p) {
  const auto U = [&](auto X, auto Y, auto T) { return u_of(X, Y, T, p); };
  const auto V = [&](auto X, auto Y, auto T) { return v_of(X, Y, T, p); };
  const auto H = [&](auto X, auto Y, auto) { return h_of(X, Y); };
  const Derivs u = derivs(U, x, y, t), v = derivs(V, x, y, t), h = derivs(H, x, y, t);
  const double g = 1.0 / (p.froude * p.froude), f = 1.0 / p.rossby, nu = 1.0 / p.reynolds;
  return {u.ft + u.f * u.fx + v.f * u.fy + g * h.fx - f * v.f - nu * (u.fxx + u.fyy),
          v.ft + u.f * v.fx + v.f * v.fy + g * h.fy + f * u.f - nu * (v.fxx + v.fyy)};
}

PhysParams coriolis_only(double f0) {
  PhysParams p;
  p.g_r = 1.0;
  p.f0 = f0;
  return p;
}

}  // namespace

TEST(WindForcing, KnownValues) {
  const WindForcing w;
  EXPECT_NEAR(wind_forcing(0.0, w).fu, -2.2e-7, 1e-22);
  EXPECT_NEAR(wind_forcing(1e6, w).fu, 2.2e-7, 1e-22);
  EXPECT_NEAR(wind_forcing(5e5, w).fu, 0.0, 1e-22);
  EXPECT_EQ(wind_forcing(3e5, w).fv, 0.0);
}

TEST(WindForcing, SymmetricAboutMidBasinAntisymmetricAboutQuarters) {
  const WindForcing w;
  const Grid g = Grid::over(25, 50, 0, 1e6, 0, 2e6);
  for (int j = 1; j <= g.ny; ++j) {
    const double a = wind_forcing(g.yc(j), w).fu;
    const double b = wind_forcing(g.yc(g.ny + 1 - j), w).fu;
    EXPECT_NEAR(a, b, 1e-21);
  }
  for (double s : {1e4, 1.3e5, 4.9e5}) {
    EXPECT_NEAR(wind_forcing(5e5 + s, w).fu, -wind_forcing(5e5 - s, w).fu, 1e-21);
  }
}

TEST(ManufacturedForcing, MatchesResidualOfAnsatz) {
  for (const AnsatzParams p : {AnsatzParams{}, AnsatzParams{0.5, 0.5, kPi / 10, 2, 100, 0.1},
                               AnsatzParams{0.3, 1.2, 0.7, 1.5, 40, 0.5}}) {
    for (double x : {0.0, 0.13, 0.5, 0.77})
      for (double y : {0.05, 0.25, 0.61})
        for (double t : {0.0, 0.4, 3.0}) {
          const ForcingValue got = manufactured_forcing(x, y, t, p);
          const ForcingValue want = residual_forcing(x, y, t, p);
          EXPECT_NEAR(got.fu, want.fu, 1e-12) << x << " " << y << " " << t;
          EXPECT_NEAR(got.fv, want.fv, 1e-12) << x << " " << y << " " << t;
        }
  }
}

TEST(SourceStep, HeunAmplificationForPureRotation) {
  const Grid g = Grid::over(4, 4, 0, 1, 0, 1);
  const double f0 = 1e-4, dt = 1000.0;
  ConservedField q(g, State{2.0, 1.0, 0.5});
  rk2_advance(q, dt, coriolis_only(f0), 0.0, BoundaryKind::periodic);
  const double fdt = f0 * dt;
  const double growth = 1.0 + std::pow(fdt, 4) / 4.0;
  q.for_each_interior([&](int, int, const State& s) {
    EXPECT_EQ(s.h, 2.0);
    EXPECT_NEAR((s.hu * s.hu + s.hv * s.hv) / 1.25, growth, 1e-15);
    // First-order rotation direction: d(hu)/dt = f hv, d(hv)/dt = -f hu.
    EXPECT_GT(s.hu, 1.0 - 1e-3);
    EXPECT_LT(s.hv, 0.5);
  });
}

TEST(SourceStep, CoriolisUsesBetaPlaneFromOrigin) {
  const Grid g = Grid::over(2, 4, 0, 1, 10, 14);
  PhysParams p = coriolis_only(1.0);
  p.beta = 0.5;
  ConservedField q(g, State{1.0, 0.0, 2.0});
  fill_ghosts(q, BoundaryKind::periodic);
  const SourceRhs r = eval_rhs(q, ghost_velocities(q), p, 0.0);
  for (int j = 1; j <= 4; ++j) {
    EXPECT_DOUBLE_EQ(r.dhu(1, j), (1.0 + 0.5 * (g.yc(j) - 10.0)) * 2.0);
  }
  p.beta_origin = 12.0;
  const SourceRhs r2 = eval_rhs(q, ghost_velocities(q), p, 0.0);
  EXPECT_DOUBLE_EQ(r2.dhu(1, 1), (1.0 + 0.5 * (10.5 - 12.0)) * 2.0);
}

TEST(SourceStep, ViscousTermIsFivePointLaplacian) {
  const int n = 16;
  const Grid g = Grid::over(n, n, 0, 1, 0, 1);
  PhysParams p;
  p.nu = 0.3;
  ConservedField q(g);
  q.for_each_interior([&](int i, int, State& s) {
    s = {2.0, 2.0 * std::sin(2 * kPi * g.xc(i)), 0.0};
  });
  fill_ghosts(q, BoundaryKind::periodic);
  const SourceRhs r = eval_rhs(q, ghost_velocities(q), p, 0.0);
  const double lambda = (2.0 * std::cos(2 * kPi * g.dx) - 2.0) / (g.dx * g.dx);
  q.for_each_interior([&](int i, int j, const State&) {
    EXPECT_NEAR(r.dhu(i, j), 2.0 * 0.3 * lambda * std::sin(2 * kPi * g.xc(i)), 1e-10);
    EXPECT_NEAR(r.dhv(i, j), 0.0, 1e-12);
  });
}

TEST(SourceStep, CachedAndDirectEvaluationAgree) {
  const Grid g = Grid::over(10, 12, 0, 1, 0, 1);
  ConservedField q(g);
  q.for_each_interior([&](int i, int j, State& s) {
    s = conserved(exact_solution(g.xc(i), g.yc(j), 0.3, AnsatzParams{}));
  });
  fill_ghosts(q, BoundaryKind::periodic);
  const VelocityFields vel = ghost_velocities(q);
  PhysParams wind = coriolis_only(5e-5);
  wind.beta = 1e-11;
  wind.nu = 0.01;
  wind.forcing = WindForcing{};
  for (const PhysParams& p : {nondimensional_params(AnsatzParams{}), wind}) {
    SourceStepper stepper(g, p);
    SourceRhs cached{ScalarField(g), ScalarField(g)};
    stepper.eval(q, vel, 0.3, cached);
    const SourceRhs direct = eval_rhs(q, vel, p, 0.3);
    q.for_each_interior([&](int i, int j, const State&) {
      EXPECT_NEAR(cached.dhu(i, j), direct.dhu(i, j),
                  1e-14 * std::max(1.0, std::fabs(direct.dhu(i, j))));
      EXPECT_NEAR(cached.dhv(i, j), direct.dhv(i, j),
                  1e-14 * std::max(1.0, std::fabs(direct.dhv(i, j))));
    });
  }
}

TEST(SourceStep, NondimensionalMappingIsParameterSubstitution) {
  const AnsatzParams a{};
  PhysParams manual;
  manual.g_r = 1.0 / (a.froude * a.froude);
  manual.nu = 1.0 / a.reynolds;
  manual.f0 = 1.0 / a.rossby;
  manual.forcing = a;
  const PhysParams mapped = nondimensional_params(a);
  EXPECT_EQ(mapped.g_r, manual.g_r);
  EXPECT_EQ(mapped.nu, manual.nu);
  EXPECT_EQ(mapped.f0, manual.f0);
  EXPECT_EQ(mapped.beta, 0.0);

  const Grid g = Grid::over(6, 6, 0, 1, 0, 1);
  ConservedField q(g);
  q.for_each_interior([&](int i, int j, State& s) {
    s = conserved(exact_solution(g.xc(i), g.yc(j), 0.0, a));
  });
  fill_ghosts(q, BoundaryKind::periodic);
  const VelocityFields vel = ghost_velocities(q);
  const SourceRhs r1 = eval_rhs(q, vel, manual, 0.2);
  const SourceRhs r2 = eval_rhs(q, vel, mapped, 0.2);
  q.for_each_interior([&](int i, int j, const State&) {
    EXPECT_EQ(r1.dhu(i, j), r2.dhu(i, j));
    EXPECT_EQ(r1.dhv(i, j), r2.dhv(i, j));
  });
}

TEST(SourceStep, DepthIsFrozen) {
  const Grid g = Grid::over(5, 5, 0, 1, 0, 1);
  ConservedField q(g);
  q.for_each_interior([&](int i, int j, State& s) { s = {1.0 + 0.1 * i, 0.1 * j, -0.2}; });
  const ConservedField q0 = q;
  PhysParams p = coriolis_only(2.0);
  p.nu = 0.05;
  p.forcing = WindForcing{0.11, 1000, 500, 1.0};
  rk2_advance(q, 0.01, p, 0.0, BoundaryKind::solid_wall);
  q.for_each_interior([&](int i, int j, const State& s) { EXPECT_EQ(s.h, q0(i, j).h); });
}

TEST(SourceStep, SecondOrderInTime) {
  // Constant-coefficient rotation has the exact solution R(f t) m0.
  const Grid g = Grid::over(2, 2, 0, 1, 0, 1);
  const double f = 1.0, t_end = 1.0;
  const auto error = [&](int steps) {
    ConservedField q(g, State{1.0, 1.0, 0.0});
    SourceStepper s(g, coriolis_only(f));
    for (int n = 0; n < steps; ++n) s.advance(q, t_end / steps, n * t_end / steps, BoundaryKind::periodic);
    return std::hypot(q(1, 1).hu - std::cos(f * t_end), q(1, 1).hv + std::sin(f * t_end));
  };
  const double ratio = error(20) / error(40);
  EXPECT_GT(ratio, 3.8);
  EXPECT_LT(ratio, 4.2);
}
