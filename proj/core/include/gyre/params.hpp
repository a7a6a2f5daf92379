#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "gyre/grid.hpp"

namespace gyre {

enum class Limiter { none, minmod, mc, superbee };
enum class Splitting { godunov, strang };
enum class BoundaryKind { periodic, solid_wall };

std::string_view to_string(Limiter l);
std::string_view to_string(Splitting s);
std::string_view to_string(BoundaryKind b);
Limiter parse_limiter(std::string_view s);
Splitting parse_splitting(std::string_view s);
BoundaryKind parse_boundary(std::string_view s);

struct NoForcing {
  friend bool operator==(const NoForcing&, const NoForcing&) = default;
};

/// Zonal wind stress curl: F^u = -tau0 / (rho * h0) * cos(2 pi y / length).
struct WindForcing {
  double tau0 = 0.11;    // N/m^2
  double rho = 1000.0;   // kg/m^3
  double h0 = 500.0;     // m
  double length = 2e6;   // north-south basin extent, m
  friend bool operator==(const WindForcing&, const WindForcing&) = default;
};

/// Forcing that makes the periodic f-plane ansatz an exact solution of the
/// nondimensional system.
struct ManufacturedForcing {
  double eta = 0.1;
  double epsilon = 0.9;
  double omega = 0.15707963267948966;  // pi / 20
  double froude = 2.0;
  double reynolds = 100.0;
  double rossby = 0.1;
  friend bool operator==(const ManufacturedForcing&,
                         const ManufacturedForcing&) = default;
};

using ForcingSpec = std::variant<NoForcing, WindForcing, ManufacturedForcing>;

struct PhysParams {
  double g_r = 1.0;    // reduced gravity, m/s^2
  double f0 = 0.0;     // Coriolis parameter, 1/s
  double beta = 0.0;   // 1/(m s)
  double nu = 0.0;     // kinematic viscosity, m^2/s
  // y at which f = f0; the southern boundary of the grid when unset.
  std::optional<double> beta_origin;
  ForcingSpec forcing = NoForcing{};

  void validate() const;
};

struct GridSpec {
  int nx = 1;
  int ny = 1;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

struct RunConfig {
  GridSpec grid;
  PhysParams params;
  std::optional<double> dt;          // fixed step, s
  std::optional<double> cfl_target;  // adaptive step
  double t_end = 1.0;
  Splitting splitting = Splitting::strang;
  Limiter limiter = Limiter::none;
  BoundaryKind boundary = BoundaryKind::periodic;
  bool entropy_fix = false;
  bool transverse = true;
  int output_every = 1;
  std::uint64_t seed = 0;
  int workers = 1;

  /// Throws ConfigError describing the first violated rule.
  void validate() const;
};

/// Validates the grid section of a config and builds the grid.
Grid build_grid(const RunConfig& config);

}  // namespace gyre
