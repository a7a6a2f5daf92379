#include "gyre/boundary.hpp"

#include "gyre/errors.hpp"

namespace gyre {

namespace {

int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }

// Ghost index g (0, -1, n+1, n+2) mirrored into the interior.
int mirror(int g, int n) { return g <= 0 ? 1 - g : 2 * n + 1 - g; }

template <class T, class Reflect>
void fill_walls(Field<T>& f, Reflect reflect_x, Reflect reflect_y) {
  const int nx = f.nx();
  const int ny = f.ny();
  for (int j = 1; j <= ny; ++j) {
    for (int g : {0, -1}) f(g, j) = reflect_x(f(mirror(g, nx), j));
    for (int g : {nx + 1, nx + 2}) f(g, j) = reflect_x(f(mirror(g, nx), j));
  }
  for (int i = 1 - kGhost; i <= nx + kGhost; ++i) {
    for (int g : {0, -1}) f(i, g) = reflect_y(f(i, mirror(g, ny)));
    for (int g : {ny + 1, ny + 2}) f(i, g) = reflect_y(f(i, mirror(g, ny)));
  }
}

template <class T>
void fill_periodic(Field<T>& f) {
  const int nx = f.nx();
  const int ny = f.ny();
  for (int j = 1; j <= ny; ++j) {
    for (int g : {0, -1, nx + 1, nx + 2}) f(g, j) = f(wrap(g, nx), j);
  }
  for (int i = 1 - kGhost; i <= nx + kGhost; ++i) {
    for (int g : {0, -1, ny + 1, ny + 2}) f(i, g) = f(i, wrap(g, ny));
  }
}

}  // namespace

void fill_ghost_periodic(ConservedField& q) { fill_periodic(q); }

void fill_ghost_solid_wall(ConservedField& q) {
  if (q.nx() < 2 || q.ny() < 2) {
    throw Error("solid-wall ghost cells need at least two cells per direction");
  }
  const auto reflect = [](const State& s) { return State{s.h, -s.hu, -s.hv}; };
  fill_walls(q, +reflect, +reflect);
}

void fill_ghosts(ConservedField& q, BoundaryKind kind) {
  if (kind == BoundaryKind::periodic) {
    fill_ghost_periodic(q);
  } else {
    fill_ghost_solid_wall(q);
  }
}

void fill_ghosts(ScalarField& s, BoundaryKind kind, Parity parity) {
  if (kind == BoundaryKind::periodic) {
    fill_periodic(s);
    return;
  }
  if (s.nx() < 2 || s.ny() < 2) {
    throw Error("solid-wall ghost cells need at least two cells per direction");
  }
  if (parity == Parity::even) {
    const auto keep = [](double v) { return v; };
    fill_walls(s, +keep, +keep);
  } else {
    const auto flip = [](double v) { return -v; };
    fill_walls(s, +flip, +flip);
  }
}

void ghost_velocities(const ConservedField& q, VelocityFields& out) {
  const Grid& g = q.grid();
  if (!(out.u.grid() == g)) out.u = ScalarField(g);
  if (!(out.v.grid() == g)) out.v = ScalarField(g);
  for (int j = 0; j <= g.ny + 1; ++j) {
    for (int i = 0; i <= g.nx + 1; ++i) {
      const State& c = q(i, j);
      require_positive_depth(c.h, i, j);
      out.u(i, j) = c.hu / c.h;
      out.v(i, j) = c.hv / c.h;
    }
  }
}

VelocityFields ghost_velocities(const ConservedField& q) {
  VelocityFields out;
  ghost_velocities(q, out);
  return out;
}

}  // namespace gyre
