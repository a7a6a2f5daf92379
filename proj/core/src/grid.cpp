#include <cmath>
#include <sstream>
#include <string>

#include "gyre/errors.hpp"
#include "gyre/grid.hpp"
#include "gyre/params.hpp"
#include "gyre/state.hpp"

namespace gyre {

Grid Grid::over(int nx, int ny, double x_min, double x_max, double y_min,
                double y_max) {
  if (nx < 1 || ny < 1) {
    throw ConfigError("grid needs at least one cell per direction (nx=" +
                      std::to_string(nx) + ", ny=" + std::to_string(ny) + ")");
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw ConfigError("grid extents must be positive");
  }
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.x0 = x_min;
  g.y0 = y_min;
  g.dx = (x_max - x_min) / nx;
  g.dy = (y_max - y_min) / ny;
  return g;
}

void require_positive_depth(double h, int i, int j) {
  if (!(h > kDepthFloor)) {
    std::ostringstream msg;
    msg << "non-positive water depth h=" << h << " at cell (" << i << ", " << j
        << "): the water depth is zero, which is not physically meaningful";
    throw PositivityError(msg.str());
  }
}

Primitive primitives(const State& q) {
  if (!(q.h > kDepthFloor)) {
    std::ostringstream msg;
    msg << "non-positive water depth h=" << q.h
        << ": the water depth is zero, which is not physically meaningful";
    throw PositivityError(msg.str());
  }
  return {q.h, q.hu / q.h, q.hv / q.h};
}

State conserved(const Primitive& p) { return {p.h, p.h * p.u, p.h * p.v}; }

double total_mass(const ConservedField& q) {
  double sum = 0.0;
  q.for_each_interior([&](int, int, const State& s) { sum += s.h; });
  return sum * q.grid().cell_area();
}

std::string_view to_string(Limiter l) {
  switch (l) {
    case Limiter::none: return "none";
    case Limiter::minmod: return "minmod";
    case Limiter::mc: return "mc";
    case Limiter::superbee: return "superbee";
  }
  return "?";
}

std::string_view to_string(Splitting s) {
  return s == Splitting::godunov ? "godunov" : "strang";
}

std::string_view to_string(BoundaryKind b) {
  return b == BoundaryKind::periodic ? "periodic" : "solid_wall";
}

Limiter parse_limiter(std::string_view s) {
  if (s == "none") return Limiter::none;
  if (s == "minmod") return Limiter::minmod;
  if (s == "mc") return Limiter::mc;
  if (s == "superbee") return Limiter::superbee;
  throw ConfigError("unknown limiter '" + std::string(s) +
                    "' (expected none, minmod, mc or superbee)");
}

Splitting parse_splitting(std::string_view s) {
  if (s == "godunov") return Splitting::godunov;
  if (s == "strang") return Splitting::strang;
  throw ConfigError("unknown splitting '" + std::string(s) +
                    "' (expected godunov or strang)");
}

BoundaryKind parse_boundary(std::string_view s) {
  if (s == "periodic") return BoundaryKind::periodic;
  if (s == "solid_wall" || s == "solid-wall") return BoundaryKind::solid_wall;
  throw ConfigError("unknown boundary '" + std::string(s) +
                    "' (expected periodic or solid_wall)");
}

void PhysParams::validate() const {
  if (!(g_r > 0.0) || !std::isfinite(g_r)) throw ConfigError("g_r must be positive");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be non-negative");
  if (!std::isfinite(f0) || !std::isfinite(beta)) {
    throw ConfigError("f0 and beta must be finite");
  }
  if (const auto* w = std::get_if<WindForcing>(&forcing)) {
    if (!(w->rho > 0.0) || !(w->h0 > 0.0) || !(w->length > 0.0)) {
      throw ConfigError("wind forcing needs positive rho, h0 and length");
    }
  }
  if (const auto* m = std::get_if<ManufacturedForcing>(&forcing)) {
    if (!(m->froude > 0.0) || !(m->reynolds > 0.0) || !(m->rossby > 0.0)) {
      throw ConfigError("manufactured forcing needs positive Fr, Re and R0");
    }
  }
}

void RunConfig::validate() const {
  if (dt.has_value() == cfl_target.has_value()) {
    throw ConfigError("exactly one of dt and cfl_target must be set");
  }
  if (dt && !(*dt > 0.0)) throw ConfigError("dt must be positive");
  if (cfl_target && !(*cfl_target > 0.0 && *cfl_target <= 1.0)) {
    throw ConfigError("cfl_target must lie in (0, 1]");
  }
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (output_every < 1) throw ConfigError("output_every must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  params.validate();
  const Grid g = Grid::over(grid.nx, grid.ny, grid.x_min, grid.x_max,
                            grid.y_min, grid.y_max);
  if (boundary == BoundaryKind::solid_wall && (g.nx < 2 || g.ny < 2)) {
    throw ConfigError("solid walls need at least two cells per direction");
  }
}

Grid build_grid(const RunConfig& config) {
  const GridSpec& s = config.grid;
  return Grid::over(s.nx, s.ny, s.x_min, s.x_max, s.y_min, s.y_max);
}

}  // namespace gyre
