#include "gyre/riemann.hpp"

#include <cmath>

#include "gyre/errors.hpp"

namespace gyre {

namespace {

void check_depth(double h) {
  if (!(h > kDepthFloor)) {
    throw PositivityError("Riemann problem with non-positive depth h=" +
                          std::to_string(h) +
                          ": the water depth is zero, which is not physically "
                          "meaningful");
  }
}

}  // namespace

State flux_x(const State& q, double g_r) {
  check_depth(q.h);
  const double u = q.hu / q.h;
  return {q.hu, q.hu * u + 0.5 * g_r * q.h * q.h, q.hv * u};
}

State flux_y(const State& q, double g_r) {
  check_depth(q.h);
  const double v = q.hv / q.h;
  return {q.hv, q.hu * v, q.hv * v + 0.5 * g_r * q.h * q.h};
}

Eigensystem eigen_x(double h, double u, double v, double g_r) {
  check_depth(h);
  const double c = std::sqrt(g_r * h);
  Eigensystem e;
  e.speeds = {u - c, u, u + c};
  e.vectors = {State{1.0, u - c, v}, State{0.0, 0.0, 1.0}, State{1.0, u + c, v}};
  return e;
}

Eigensystem eigen_y(double h, double u, double v, double g_r) {
  check_depth(h);
  const double c = std::sqrt(g_r * h);
  Eigensystem e;
  e.speeds = {v - c, v, v + c};
  e.vectors = {State{1.0, u, v - c}, State{0.0, -1.0, 0.0}, State{1.0, u, v + c}};
  return e;
}

RoeState roe_average(const State& left, const State& right, double g_r) {
  check_depth(left.h);
  check_depth(right.h);
  const double sl = std::sqrt(left.h);
  const double sr = std::sqrt(right.h);
  const double inv = 1.0 / (sl + sr);
  RoeState roe;
  roe.u = (left.hu / sl + right.hu / sr) * inv;
  roe.v = (left.hv / sl + right.hv / sr) * inv;
  roe.h = 0.5 * (left.h + right.h);
  roe.c = std::sqrt(g_r * roe.h);
  return roe;
}

namespace detail {

void solve_normal(const State& left, const State& right, double g_r,
                  bool entropy_fix, WaveDecomposition& out, RoeState& roe) {
  roe = roe_average(left, right, g_r);
  const double u = roe.u;
  const double v = roe.v;
  const double c = roe.c;

  const State d = right - left;
  const double inv2c = 0.5 / c;
  const double a1 = ((u + c) * d.h - d.hu) * inv2c;
  const double a3 = (d.hu - (u - c) * d.h) * inv2c;
  const double a2 = d.hv - v * d.h;

  out.waves[0] = {a1, a1 * (u - c), a1 * v};
  out.waves[1] = {0.0, 0.0, a2};
  out.waves[2] = {a3, a3 * (u + c), a3 * v};
  out.speeds = {u - c, u, u + c};

  const auto upwind_split = [&] {
    State minus, plus;
    for (int p = 0; p < 3; ++p) {
      const double s = out.speeds[p];
      if (s < 0.0) {
        minus += s * out.waves[p];
      } else {
        plus += s * out.waves[p];
      }
    }
    out.fluct_minus = minus;
    out.fluct_plus = plus;
  };
  if (!entropy_fix) {
    upwind_split();
    return;
  }

  // Harten-Hyman fix: split a transonic rarefaction between both sides.
  State total;
  for (int p = 0; p < 3; ++p) total += out.speeds[p] * out.waves[p];

  State minus;
  const double ul = left.hu / left.h;
  const double s0 = ul - std::sqrt(g_r * left.h);
  const State q1 = left + out.waves[0];
  bool done = false;
  bool transonic = false;
  if (q1.h > kDepthFloor) {
    const double s1 = q1.hu / q1.h - std::sqrt(g_r * q1.h);
    if (s0 < 0.0 && s1 > 0.0) {
      minus += (s0 * (s1 - out.speeds[0]) / (s1 - s0)) * out.waves[0];
      done = true;
      transonic = true;
    } else if (s0 >= 0.0 && out.speeds[0] >= 0.0) {
      done = true;  // everything moves right
    }
  }
  if (!done) {
    if (out.speeds[0] < 0.0) minus += out.speeds[0] * out.waves[0];
    if (out.speeds[1] < 0.0) minus += out.speeds[1] * out.waves[1];
    const State q2 = right - out.waves[2];
    const double ur = right.hu / right.h;
    const double s3 = ur + std::sqrt(g_r * right.h);
    if (q2.h > kDepthFloor) {
      const double s03 = q2.hu / q2.h + std::sqrt(g_r * q2.h);
      if (s03 < 0.0 && s3 > 0.0) {
        minus += (s03 * (s3 - out.speeds[2]) / (s3 - s03)) * out.waves[2];
        transonic = true;
      } else if (out.speeds[2] < 0.0) {
        minus += out.speeds[2] * out.waves[2];
      }
    } else if (out.speeds[2] < 0.0) {
      minus += out.speeds[2] * out.waves[2];
    }
  }
  if (!transonic) {
    upwind_split();
    return;
  }
  out.fluct_minus = minus;
  out.fluct_plus = total - minus;
}

TransverseSplit split_transverse(const RoeState& roe, const State& asdq) {
  const double u = roe.u;
  const double v = roe.v;
  const double c = roe.c;
  const double inv2c = 0.5 / c;
  const double b1 = ((v + c) * asdq.h - asdq.hv) * inv2c;
  const double b3 = (asdq.hv - (v - c) * asdq.h) * inv2c;
  const double b2 = asdq.hu - u * asdq.h;

  const State r1{1.0, u, v - c};
  const State r2{0.0, 1.0, 0.0};
  const State r3{1.0, u, v + c};
  const double s1 = v - c;
  const double s2 = v;
  const double s3 = v + c;

  TransverseSplit out;
  out.minus = (std::fmin(s1, 0.0) * b1) * r1 + (std::fmin(s2, 0.0) * b2) * r2 +
              (std::fmin(s3, 0.0) * b3) * r3;
  out.plus = (std::fmax(s1, 0.0) * b1) * r1 + (std::fmax(s2, 0.0) * b2) * r2 +
             (std::fmax(s3, 0.0) * b3) * r3;
  return out;
}

}  // namespace detail

WaveDecomposition solve_riemann(const State& left, const State& right,
                                double g_r, Direction dir, bool entropy_fix) {
  WaveDecomposition out;
  RoeState roe;
  if (dir == Direction::x) {
    detail::solve_normal(left, right, g_r, entropy_fix, out, roe);
    return out;
  }
  detail::solve_normal(swap_momenta(left), swap_momenta(right), g_r,
                       entropy_fix, out, roe);
  for (auto& w : out.waves) w = swap_momenta(w);
  out.fluct_minus = swap_momenta(out.fluct_minus);
  out.fluct_plus = swap_momenta(out.fluct_plus);
  return out;
}

}  // namespace gyre
