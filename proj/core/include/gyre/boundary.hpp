#pragma once

#include "gyre/params.hpp"
#include "gyre/state.hpp"

namespace gyre {

void fill_ghost_periodic(ConservedField& q);

/// Mirrors h and negates both momentum components across every wall. The
/// x-walls are filled first, then the y-walls over the full row width, which
/// also populates the corner blocks.
void fill_ghost_solid_wall(ConservedField& q);

void fill_ghosts(ConservedField& q, BoundaryKind kind);

enum class Parity { even, odd };

/// Scalar counterpart: periodic wrap, or mirror with the given parity at
/// solid walls.
void fill_ghosts(ScalarField& s, BoundaryKind kind, Parity parity);

struct VelocityFields {
  ScalarField u;
  ScalarField v;
};

/// U = HU/H and V = HV/H on interior cells and the first ghost layer of an
/// already ghost-filled field. Throws PositivityError on a non-positive depth.
VelocityFields ghost_velocities(const ConservedField& q);
void ghost_velocities(const ConservedField& q, VelocityFields& out);

}  // namespace gyre
