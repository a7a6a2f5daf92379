#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gyre {

struct SelftestCheck {
  std::string name;
  double worst = 0.0;  // largest measured deviation
  double tolerance = 0.0;
  bool passed = false;
};

/// Randomized interface-state suite: wave completeness, the Roe flux
/// difference property in x and y, and x/y symmetry of the solver, over
/// `samples` states with depths in [0.5, 2] and velocities in [-1, 1].
std::vector<SelftestCheck> riemann_selftest(int samples, std::uint64_t seed,
                                            double tolerance = 1e-12);

/// Runs a one-dimensional dam break along x and its transpose along y and
/// reports the largest bitwise difference after `steps` steps.
SelftestCheck dam_break_transpose_check(int n, int steps);

}  // namespace gyre
