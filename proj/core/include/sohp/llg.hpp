#pragma once

#include <vector>

#include "sohp/field.hpp"
#include "sohp/gci.hpp"
#include "sohp/params.hpp"

namespace sohp {

/// Grouped coefficients of the zero-speed reduction:
///   d Omega/dt = damping P_perp(Lap Omega) - precession (Omega x Lap Omega),
/// damping = kappa (2 d + c2 cos delta), precession = kappa (c2 sin delta - alpha).
struct LlgCoefficients {
  double damping = 0.0;
  double precession = 0.0;

  LlgCoefficients() = default;
  LlgCoefficients(double damping_, double precession_);

  static LlgCoefficients from_physical(const ModelParams& params, const HydroCoefficients& hc);
};

/// Per-node l = P_perp(kappa c1 Lap(rho Omega) - phi_rep grad rho) with
/// second-order centered periodic stencils; orthogonal to Omega node-wise.
std::vector<Vec3> ell_term(const OrientationField& field, const HydroCoefficients& coeffs,
                           const ModelParams& params);

struct DiffusiveRhs {
  std::vector<double> drho;
  std::vector<Vec3> domega;
};

/// Instantaneous right-hand side (physical time) of the diffusive model:
/// conservative transport for rho; transport + diffusive bracket for Omega.
DiffusiveRhs diffusive_rhs(const OrientationField& field, const HydroCoefficients& coeffs,
                           const ModelParams& params);

/// Explicit stability bound used by the steppers (advective and parabolic).
double max_stable_dt_diffusive(const OrientationField& field, const HydroCoefficients& coeffs,
                               const ModelParams& params);
double max_stable_dt_llg(const OrientationField& field, const LlgCoefficients& llg);

/// One RK2 (midpoint) step with post-stage renormalization of Omega.
/// pre_projection_drift, when given, receives the largest norm deviation
/// seen before projection across the two stages.
OrientationField step_diffusive(const OrientationField& field, const HydroCoefficients& coeffs,
                                const ModelParams& params, double dt,
                                double* pre_projection_drift = nullptr);

OrientationField llg_step(const OrientationField& field, const LlgCoefficients& llg, double dt,
                          double* pre_projection_drift = nullptr);

/// 1/2 sum over nodes and grid directions of |forward difference|^2 dx^dim.
double dirichlet_energy(const OrientationField& field);

}  // namespace sohp
