#pragma once

#include <span>
#include <vector>

#include "gyre/params.hpp"
#include "gyre/state.hpp"

namespace gyre {

/// Parameters of the periodic f-plane ansatz and of the nondimensional
/// system it solves.
using AnsatzParams = ManufacturedForcing;

/// Exact (h, u, v) of the ansatz at (x, y, t).
Primitive exact_solution(double x, double y, double t, const AnsatzParams& p);

/// Nondimensional system as solver parameters: g_r = Fr^-2, nu = 1/Re,
/// f0 = 1/R0, beta = 0, manufactured forcing.
PhysParams nondimensional_params(const AnsatzParams& p);

/// How the initial field is sampled and the exact solution compared.
enum class SampleConvention { point, cell_average };

/// Exact solution at time t on the grid: cell-center values or tensor
/// Gauss-Legendre cell averages (of h, hu, hv).
ConservedField sample_exact(const Grid& grid, double t, const AnsatzParams& p,
                            SampleConvention convention);

/// sqrt(sum(e^2) / count) over paired samples. Throws Error on a size
/// mismatch.
double l2_error(std::span<const double> numeric, std::span<const double> exact);
double l2_error(const ScalarField& numeric, const ScalarField& exact);

struct VerificationOptions {
  Splitting splitting = Splitting::strang;
  Limiter limiter = Limiter::none;
  SampleConvention convention = SampleConvention::point;
  int workers = 1;
};

/// Periodic unit-square run of the ansatz; N cells per direction.
RunConfig verification_config(int n, double dt, double t_end,
                              const AnsatzParams& p,
                              const VerificationOptions& opts = {});

/// dt rule of the refinement study: base_dt at N = 10, scaled by (10/N)^2,
/// which divides dt by four for every doubling of N.
double refinement_dt(int n, double base_dt);

struct ConvergenceRow {
  int n = 0;
  double dt = 0.0;
  double error = 0.0;
  double observed_order = 0.0;  // 0 on the first row
  double seconds = 0.0;
};

struct LevelResult {
  ConservedField state;
  double h_error = 0.0;
  double u_error = 0.0;
  double seconds = 0.0;  // time loop only
};

/// Runs one level to t_end and measures h and u errors against the exact
/// solution sampled with the same convention.
LevelResult run_verification_level(int n, double dt, double t_end,
                                   const AnsatzParams& p,
                                   const VerificationOptions& opts = {});

/// Height-error table with log2-based orders between consecutive rows
/// (scaled by log(N_k / N_{k-1}) when the ratio is not two).
std::vector<ConvergenceRow> convergence_study(std::span<const int> levels,
                                              double base_dt, double t_end,
                                              const AnsatzParams& p,
                                              const VerificationOptions& opts = {});

struct EtaRow {
  double eta = 0.0;
  double u_error = 0.0;
  double seconds = 0.0;
};

/// For each eta, epsilon = 1 - eta; other parameters from `base`.
std::vector<EtaRow> eta_sensitivity_study(std::span<const double> etas, int n,
                                          double dt, double t_end,
                                          const AnsatzParams& base,
                                          const VerificationOptions& opts = {});

}  // namespace gyre
