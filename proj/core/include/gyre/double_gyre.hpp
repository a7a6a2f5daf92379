#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "gyre/params.hpp"
#include "gyre/splitting.hpp"
#include "gyre/state.hpp"

namespace gyre {

/// Closed-basin wind-driven experiment; defaults are the reference model
/// parameters.
struct GyreSetup {
  double f0 = 5.0e-5;       // 1/s
  double beta = 1.875e-11;  // 1/(m s)
  double tau0 = 0.11;       // N/m^2
  double nu = 300.0;        // m^2/s
  double rho = 1000.0;      // kg/m^3
  double g_r = 0.03;        // m/s^2
  double h0 = 500.0;        // m
  double width = 1.0e6;     // east-west extent D, m
  double length = 2.0e6;    // north-south extent L, m
  // Latitude reference of f = f0 + beta y; southern wall when unset.
  std::optional<double> beta_origin;

  PhysParams params() const;
};

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerYear = 365.0 * kSecondsPerDay;

/// Time step that keeps the Courant number of 6 minutes at 10 km.
double default_gyre_dt(double dx);

struct GyreRunOptions {
  double dx = 40e3;  // m, also used for dy
  std::optional<double> dt;
  std::optional<double> cfl;  // adaptive steps instead of a fixed dt
  double t_end = kSecondsPerYear;
  Splitting splitting = Splitting::strang;
  Limiter limiter = Limiter::mc;
  int workers = 1;
  int output_every = 100;
};

RunConfig gyre_config(const GyreSetup& setup, const GyreRunOptions& opts);

/// h = H0, hu = hv = 0.
ConservedField init_rest(const Grid& grid, const GyreSetup& setup);

ScalarField height_anomaly(const ConservedField& q, double h0);

/// Rossby deformation radius sqrt(g_r H0) / (f0 + beta (y - origin)).
double rossby_radius(const GyreSetup& setup, double y);

enum class StreamBasis { velocity, transport };

struct StreamFunction {
  ScalarField psi;
  double relative_residual = 0.0;
  int iterations = 0;
};

/// Cell-centered vorticity dv/dx - du/dy (or of the transport hv, hu) by
/// centered differences, using ghost values of a solid-wall field.
ScalarField vorticity(const ConservedField& q, StreamBasis basis);

/// Solves lap(psi) = vorticity with psi = 0 on the walls by conjugate
/// gradients to the given relative residual. Throws Error on non-convergence.
StreamFunction stream_function(const ConservedField& q,
                               StreamBasis basis = StreamBasis::velocity,
                               double tolerance = 1e-10);
StreamFunction solve_stream_function(const ScalarField& rhs,
                                     double tolerance = 1e-10);

/// Relative residual ||lap(psi) - rhs|| / ||rhs|| of the discrete operator.
double poisson_residual(const ScalarField& psi, const ScalarField& rhs);

struct AnomalyExtremum {
  int i = 0;
  int j = 0;
  double value = 0.0;             // h - H0 at the extremum
  double distance_from_west = 0.0;  // cell-center distance to x0, m
};

AnomalyExtremum anomaly_extremum(const ScalarField& anomaly);

struct GyreSplit {
  double south_mean = 0.0;
  double north_mean = 0.0;
  bool max_in_south = false;
  bool min_in_north = false;
  bool split() const {
    return south_mean * north_mean < 0.0 &&
           (max_in_south == min_in_north);
  }
};

/// Sign structure of the anomaly about the mid-basin latitude.
GyreSplit gyre_split(const ScalarField& anomaly);

struct GyreSnapshot {
  double t = 0.0;
  ConservedField state;
};

struct GyreRunResult {
  ConservedField final_state;
  std::vector<StepRecord> records;
  std::vector<GyreSnapshot> snapshots;
  double max_abs_u = 0.0;  // over all recorded steps
  bool finite = true;
};

/// Spins the basin up from rest (or from `initial`) and keeps a snapshot
/// every `snapshot_every` seconds of simulated time.
GyreRunResult run_gyre(const GyreSetup& setup, const GyreRunOptions& opts,
                       double snapshot_every = 30 * kSecondsPerDay,
                       const std::optional<ConservedField>& initial = {},
                       const std::function<void(const GyreSnapshot&)>& on_snapshot = {});

/// Writes x, y, h_anom, u, v, psi as CSV and VTK under `dir`, named by
/// simulated day.
void write_gyre_snapshot(const std::filesystem::path& dir,
                         const GyreSnapshot& snap, const GyreSetup& setup);

}  // namespace gyre
