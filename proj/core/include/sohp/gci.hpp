#pragma once

#include <complex>
#include <vector>

#include "sohp/params.hpp"
#include "sohp/quadrature.hpp"

namespace sohp {

/// Complex tridiagonal system A psi = rhs. lower[0] and upper[n-1] are unused.
struct ComplexTridiagonal {
  std::vector<std::complex<double>> lower;
  std::vector<std::complex<double>> diag;
  std::vector<std::complex<double>> upper;
  std::vector<std::complex<double>> rhs;

  std::size_t size() const { return diag.size(); }

  /// A x for a full-length vector x (boundary rows included).
  std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& x) const;
};

/// Thomas elimination. The assembled operator is strictly diagonally dominant,
/// so no pivoting is required; a vanishing pivot raises SingularSystemError.
std::vector<std::complex<double>> solve_tridiagonal(const ComplexTridiagonal& sys);

/// Discretized generalized collision invariants psi1, psi2 on a latitude grid.
struct GciSolution {
  ThetaGrid grid;
  std::vector<double> psi1;
  std::vector<double> psi2;
  double beta = 0.0;
  double alpha = 0.0;
  double residual_norm = 0.0;
};

struct GciOptions {
  double residual_tol = 1e-8;
};

/// Assemble the divergence-form discretization of the complex elliptic
/// operator acting on psi = psi1 + i psi2:
///
///   d e^{-beta cos t} (1/sin t) d/dt( sin t e^{beta cos t} d psi/dt )
///     - (d / sin^2 t) psi + i alpha sin t psi = sin t,   psi(0) = psi(pi) = 0,
///
/// which equals -sin t psi' + d[(1/sin t)(sin t psi')' - psi/sin^2 t]
/// + i alpha sin t psi because d beta = 1. Half-node weights
/// sin(t +/- h/2) e^{beta(cos(t +/- h/2) - cos t)} keep the second-difference
/// block in conservative form; boundary rows are identity rows with zero rhs.
ComplexTridiagonal assemble_gci_system(double beta, double alpha, const ThetaGrid& grid);

/// Solve the assembled system and package the result with its residual.
GciSolution solve_gci(double beta, double alpha, const ThetaGrid& grid,
                      const GciOptions& opts = {});

struct AbIntegrals {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// a_k = 1/2 int F(cos t) psi_k(t) sin^2 t dt, b_k with an extra cos t factor,
/// F the VMF density normalized over the sphere.
AbIntegrals compute_ab(const GciSolution& sol);

/// Derived constants of the orientation equation.
struct HydroCoefficients {
  double c1 = 0.0;      // Langevin function at beta = 1/d
  double c2 = 0.0;      // rho_b / rho_a
  double delta = 0.0;   // theta_b - theta_a, reduced to (-pi, pi]
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
  double rho_a = 0.0, theta_a = 0.0;
  double rho_b = 0.0, theta_b = 0.0;
  double lambda = 0.0;  // sqrt(d / c1)
  double a = 0.0;       // c2 / c1

  // provenance
  double d = 0.0;
  double alpha = 0.0;
  double residual_norm = 0.0;
  int grid_n = 0;
};

HydroCoefficients compute_coefficients(const ModelParams& params, const ThetaGrid& grid,
                                       const GciOptions& opts = {});

}  // namespace sohp
