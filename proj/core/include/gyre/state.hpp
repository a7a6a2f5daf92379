#pragma once

#include "gyre/grid.hpp"

namespace gyre {

/// Conserved triple (h, hu, hv). Also used for waves, fluxes and
/// fluctuations, which live in the same space.
struct State {
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;

  State& operator+=(const State& o) {
    h += o.h;
    hu += o.hu;
    hv += o.hv;
    return *this;
  }
  State& operator-=(const State& o) {
    h -= o.h;
    hu -= o.hu;
    hv -= o.hv;
    return *this;
  }
  State& operator*=(double s) {
    h *= s;
    hu *= s;
    hv *= s;
    return *this;
  }
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(double s, State a) { return a *= s; }
  friend State operator*(State a, double s) { return a *= s; }
  friend State operator-(const State& a) { return {-a.h, -a.hu, -a.hv}; }
  friend bool operator==(const State&, const State&) = default;
};

inline double dot(const State& a, const State& b) {
  return a.h * b.h + a.hu * b.hu + a.hv * b.hv;
}

/// Exchanges the two momentum components; maps the y-direction problem onto
/// the x-direction one.
inline State swap_momenta(const State& q) { return {q.h, q.hv, q.hu}; }

/// Depth and velocity.
struct Primitive {
  double h = 0.0;
  double u = 0.0;
  double v = 0.0;
  friend bool operator==(const Primitive&, const Primitive&) = default;
};

/// u = hu/h, v = hv/h. Throws PositivityError when h <= kDepthFloor.
Primitive primitives(const State& q);
State conserved(const Primitive& p);

/// Throws PositivityError naming the cell when h <= kDepthFloor.
void require_positive_depth(double h, int i, int j);

using ConservedField = Field<State>;

/// Sum of h * dx * dy over interior cells.
double total_mass(const ConservedField& q);

}  // namespace gyre
