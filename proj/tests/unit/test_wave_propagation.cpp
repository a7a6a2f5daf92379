#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gyre/boundary.hpp"
#include "gyre/errors.hpp"
#include "gyre/selftest.hpp"
#include "gyre/wave_propagation.hpp"

using namespace gyre;

namespace {

constexpr double kPi = std::numbers::pi;

ConservedField smooth_field(const Grid& g) {
  ConservedField q(g);
  q.for_each_interior([&](int i, int j, State& s) {
    const double x = g.xc(i), y = g.yc(j);
    const double h = 1.0 + 0.2 * std::sin(2 * kPi * x) * std::cos(2 * kPi * y);
    s = conserved({h, 0.3 * std::cos(2 * kPi * y), -0.2 * std::sin(2 * kPi * x)});
  });
  return q;
}

ConservedField advance(ConservedField q, double dt, int steps, BoundaryKind b,
                       const HyperbolicOptions& opts = {}) {
  HyperbolicStepper stepper;
  ConservedField next(q.grid());
  for (int n = 0; n < steps; ++n) {
    fill_ghosts(q, b);
    stepper.step(q, next, dt, 1.0, opts);
    std::swap(q, next);
  }
  return q;
}

ConservedField restrict_to(const ConservedField& fine, const Grid& coarse) {
  const int r = fine.grid().nx / coarse.nx;
  ConservedField out(coarse);
  out.for_each_interior([&](int i, int j, State& s) {
    s = {};
    for (int b = 0; b < r; ++b)
      for (int a = 0; a < r; ++a) s += fine((i - 1) * r + a + 1, (j - 1) * r + b + 1);
    s *= 1.0 / (r * r);
  });
  return out;
}

double h_error(const ConservedField& a, const ConservedField& b) {
  double sum = 0.0;
  a.for_each_interior([&](int i, int j, const State& s) {
    const double e = s.h - b(i, j).h;
    sum += e * e;
  });
  return std::sqrt(sum / (a.nx() * a.ny()));
}

}  // namespace

TEST(Limiter, StandardValues) {
  EXPECT_EQ(apply_limiter(-1.0, Limiter::none), 1.0);
  for (Limiter l : {Limiter::minmod, Limiter::mc, Limiter::superbee}) {
    EXPECT_EQ(apply_limiter(-0.5, l), 0.0);
    EXPECT_EQ(apply_limiter(1.0, l), 1.0);
  }
  EXPECT_EQ(apply_limiter(0.5, Limiter::minmod), 0.5);
  EXPECT_EQ(apply_limiter(3.0, Limiter::minmod), 1.0);
  EXPECT_EQ(apply_limiter(0.2, Limiter::mc), 0.4);
  EXPECT_EQ(apply_limiter(2.0, Limiter::mc), 1.5);
  EXPECT_EQ(apply_limiter(5.0, Limiter::mc), 2.0);
  EXPECT_EQ(apply_limiter(0.25, Limiter::superbee), 0.5);
  EXPECT_EQ(apply_limiter(0.75, Limiter::superbee), 1.0);
  EXPECT_EQ(apply_limiter(1.5, Limiter::superbee), 1.5);
  EXPECT_EQ(apply_limiter(4.0, Limiter::superbee), 2.0);
}

TEST(HyperbolicStep, UniformFlowIsUnchanged) {
  const Grid g = Grid::over(8, 6, 0, 1, 0, 1);
  const State s = conserved({1.2, 0.3, -0.1});
  ConservedField q(g, s);
  for (Limiter l : {Limiter::none, Limiter::mc}) {
    HyperbolicOptions o;
    o.limiter = l;
    const ConservedField out = advance(q, 0.02, 5, BoundaryKind::periodic, o);
    out.for_each_interior([&](int, int, const State& c) { EXPECT_EQ(c, s); });
  }
}

TEST(HyperbolicStep, ConservesMassPeriodicAndWalls) {
  const Grid g = Grid::over(24, 20, 0, 1, 0, 1);
  const ConservedField q0 = smooth_field(g);
  const double m0 = total_mass(q0);
  for (BoundaryKind b : {BoundaryKind::periodic, BoundaryKind::solid_wall}) {
    ConservedField q = q0;
    for (int n = 0; n < 20; ++n) {
      q = advance(q, 0.01, 1, b,
                  {Limiter::mc, false, true, 1, b == BoundaryKind::solid_wall});
      EXPECT_NEAR(total_mass(q), m0, 1e-12 * m0);
    }
  }
}

TEST(HyperbolicStep, PeriodicMomentumIsConserved) {
  const Grid g = Grid::over(16, 16, 0, 1, 0, 1);
  const ConservedField q0 = smooth_field(g);
  const ConservedField q = advance(q0, 0.01, 10, BoundaryKind::periodic);
  double hu0 = 0, hu1 = 0, hv0 = 0, hv1 = 0;
  q0.for_each_interior([&](int, int, const State& s) { hu0 += s.hu; hv0 += s.hv; });
  q.for_each_interior([&](int, int, const State& s) { hu1 += s.hu; hv1 += s.hv; });
  EXPECT_NEAR(hu1, hu0, 1e-12 * 256);
  EXPECT_NEAR(hv1, hv0, 1e-12 * 256);
}

TEST(HyperbolicStep, TransposeCommutesWithStep) {
  const Grid g = Grid::over(12, 9, 0, 12, 0, 9);
  const Grid gt = Grid::over(9, 12, 0, 9, 0, 12);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> h(0.8, 1.2), v(-0.2, 0.2);
  ConservedField a(g), at(gt);
  a.for_each_interior([&](int i, int j, State& s) {
    s = {h(gen), v(gen), v(gen)};
    at(j, i) = swap_momenta(s);
  });
  for (BoundaryKind b : {BoundaryKind::periodic, BoundaryKind::solid_wall}) {
    const HyperbolicOptions o{Limiter::mc, false, true, 1};
    const ConservedField r = advance(a, 0.3, 4, b, o);
    const ConservedField rt = advance(at, 0.3, 4, b, o);
    r.for_each_interior([&](int i, int j, const State& s) {
      EXPECT_EQ(s, swap_momenta(rt(j, i))) << i << "," << j;
    });
  }
}

TEST(HyperbolicStep, DamBreakTransposeIsBitwise) {
  const SelftestCheck c = dam_break_transpose_check(40, 30);
  EXPECT_TRUE(c.passed) << c.worst;
  EXPECT_EQ(c.worst, 0.0);
}

TEST(HyperbolicStep, SecondOrderUnderRefinement) {
  const double t_end = 0.1;
  const auto run = [&](int n) {
    const Grid g = Grid::over(n, n, 0, 1, 0, 1);
    const int steps = static_cast<int>(std::lround(t_end * n / 0.25));
    return advance(smooth_field(g), t_end / steps, steps, BoundaryKind::periodic);
  };
  const ConservedField ref = run(160);
  const ConservedField c20 = run(20);
  const ConservedField c40 = run(40);
  const double e20 = h_error(c20, restrict_to(ref, c20.grid()));
  const double e40 = h_error(c40, restrict_to(ref, c40.grid()));
  EXPECT_GE(e20 / e40, 3.5) << e20 << " " << e40;
}

TEST(HyperbolicStep, ReportsCourantAndRejectsViolation) {
  const Grid g = Grid::over(10, 10, 0, 1, 0, 1);
  ConservedField q(g, State{1.0, 0.0, 0.0});
  fill_ghosts(q, BoundaryKind::periodic);
  HyperbolicStepper stepper;
  ConservedField out(g);
  const HyperbolicStepReport r = stepper.step(q, out, 0.05, 1.0, {Limiter::mc, false, true, 1});
  EXPECT_NEAR(r.max_speed, 1.0, 1e-15);
  EXPECT_NEAR(r.max_courant, 0.5, 1e-15);
  EXPECT_EQ(r.limiter_used, Limiter::mc);
  EXPECT_THROW(stepper.step(q, out, 0.2, 1.0, {}), CflError);
}

TEST(StableDt, FromWaveSpeeds) {
  const Grid g = Grid::over(10, 20, 0, 1, 0, 1);
  ConservedField q(g, conserved({4.0, 1.0, 0.0}));
  const WaveSpeeds s = max_wave_speed(q, 1.0);
  EXPECT_DOUBLE_EQ(s.x, 3.0);
  EXPECT_DOUBLE_EQ(s.y, 2.0);
  EXPECT_DOUBLE_EQ(stable_dt(q, 1.0, 0.9), 0.9 / (3.0 / 0.1 + 2.0 / 0.05));
  EXPECT_THROW(stable_dt(s, g, 1.5), Error);
}

TEST(HyperbolicStep, WorkerCountDoesNotChangeBits) {
  const Grid g = Grid::over(20, 16, 0, 1, 0, 1);
  const ConservedField q = smooth_field(g);
  const ConservedField a = advance(q, 0.01, 5, BoundaryKind::solid_wall, {Limiter::mc, false, true, 1});
  const ConservedField b = advance(q, 0.01, 5, BoundaryKind::solid_wall, {Limiter::mc, false, true, 3});
  a.for_each_interior([&](int i, int j, const State& s) { EXPECT_EQ(s, b(i, j)); });
}
