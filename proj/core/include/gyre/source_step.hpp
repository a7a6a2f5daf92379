#pragma once

#include <vector>

#include "gyre/boundary.hpp"
#include "gyre/params.hpp"
#include "gyre/state.hpp"

namespace gyre {

struct ForcingValue {
  double fu = 0.0;
  double fv = 0.0;
};

ForcingValue wind_forcing(double y, const WindForcing& spec);
ForcingValue manufactured_forcing(double x, double y, double t,
                                  const ManufacturedForcing& spec);

/// Time derivatives of (HU, HV) on interior cells.
struct SourceRhs {
  ScalarField dhu;
  ScalarField dhv;
};

/// Evaluates the semi-discrete momentum sources: Coriolis, five-point viscous
/// Laplacian scaled by H, and H times the body forcing at time t.
void eval_rhs(const ConservedField& q, const VelocityFields& vel,
              const PhysParams& params, double t, SourceRhs& out);
SourceRhs eval_rhs(const ConservedField& q, const VelocityFields& vel,
                   const PhysParams& params, double t);

/// Heun (two-stage RK2) integration of the momentum sources with H frozen.
/// Caches the spatial forcing pattern for the grid it was built for.
class SourceStepper {
 public:
  SourceStepper() = default;
  SourceStepper(const Grid& grid, const PhysParams& params);

  /// Advances the momenta of `q` from t to t + dt. Ghost cells of q are
  /// refilled with `boundary` before each stage. Throws InstabilityError when
  /// the momentum grows by more than 1e6 in one step or turns non-finite.
  void advance(ConservedField& q, double dt, double t, BoundaryKind boundary);

  void eval(const ConservedField& q, const VelocityFields& vel, double t,
            SourceRhs& out) const;

  const PhysParams& params() const { return params_; }

  int workers = 1;

 private:
  Grid grid_{};
  PhysParams params_{};
  std::vector<double> coriolis_;  // f at each row center, index j
  // Separable trigonometric basis for the manufactured forcing.
  std::vector<double> sin_x_, cos_x_, sin_y_, cos_y_;
  std::vector<double> h_exact_;  // exp(cos 2pi x cos 2pi y), row-major interior
  std::vector<double> wind_;  // F^u per row for wind forcing
  VelocityFields vel_;
  SourceRhs k1_, k2_;
  ConservedField stage_;
};

/// Functional form of SourceStepper::advance.
void rk2_advance(ConservedField& q, double dt, const PhysParams& params,
                 double t, BoundaryKind boundary);

}  // namespace gyre
