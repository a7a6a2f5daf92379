#pragma once

#include <array>

#include "gyre/state.hpp"

namespace gyre {

enum class Direction { x, y };

/// f(q) = (hu, hu^2 + g_r h^2 / 2, huv).
State flux_x(const State& q, double g_r);
/// g(q) = (hv, huv, hv^2 + g_r h^2 / 2).
State flux_y(const State& q, double g_r);

struct Eigensystem {
  std::array<double, 3> speeds{};
  std::array<State, 3> vectors{};
};

/// Eigenvalues (u - c, u, u + c) and right eigenvectors of df/dq.
Eigensystem eigen_x(double h, double u, double v, double g_r);
/// Eigenvalues (v - c, v, v + c) and right eigenvectors of dg/dq.
Eigensystem eigen_y(double h, double u, double v, double g_r);

/// Roe linearization state of an interface.
struct RoeState {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
  double c = 0.0;
};

/// Depth-square-root weighted velocities, arithmetic mean depth and
/// c = sqrt(g_r * mean depth).
RoeState roe_average(const State& left, const State& right, double g_r);

struct WaveDecomposition {
  std::array<State, 3> waves{};
  std::array<double, 3> speeds{};
  State fluct_minus;  // A^- dq
  State fluct_plus;   // A^+ dq
};

/// Roe solver for the interface between `left` and `right`, normal to `dir`.
/// Throws PositivityError when either depth is at or below the floor.
WaveDecomposition solve_riemann(const State& left, const State& right,
                                double g_r, Direction dir,
                                bool entropy_fix = false);

/// Up- and down-going parts of a fluctuation in the transverse direction.
struct TransverseSplit {
  State minus;
  State plus;
};

namespace detail {

// The kernels below work in the x-frame: component 1 is the momentum normal
// to the interface and component 2 the transverse one. Y-direction problems
// are mapped onto this frame with swap_momenta.

/// Normal solve in the x-frame. `roe` receives the interface state.
void solve_normal(const State& left, const State& right, double g_r,
                  bool entropy_fix, WaveDecomposition& out, RoeState& roe);

/// Splits `asdq` into eigen-components of the transverse Jacobian evaluated
/// at the x-frame Roe state.
TransverseSplit split_transverse(const RoeState& roe, const State& asdq);

}  // namespace detail

}  // namespace gyre
