#include "sohp/gci.hpp"

#include <cmath>
#include <numbers>

#include "sohp/errors.hpp"
#include "sohp/sphere.hpp"

namespace sohp {

namespace {

void check_grid(const ThetaGrid& grid) {
  const int n = grid.n;
  if (n < 66) throw DomainError("gci: grid needs at least 64 interior nodes");
  if (grid.nodes.front() != 0.0 || std::abs(grid.nodes.back() - std::numbers::pi) > 1e-15) {
    throw DomainError("gci: grid must include the endpoints 0 and pi");
  }
  const double h = grid.spacing();
  for (int i = 1; i < n; ++i) {
    if (std::abs(grid.nodes[i] - grid.nodes[i - 1] - h) > 1e-12) {
      throw DomainError("gci: grid must be uniform");
    }
  }
}

}  // namespace

std::vector<std::complex<double>> ComplexTridiagonal::apply(
    const std::vector<std::complex<double>>& x) const {
  const std::size_t n = size();
  std::vector<std::complex<double>> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> acc = diag[i] * x[i];
    if (i > 0) acc += lower[i] * x[i - 1];
    if (i + 1 < n) acc += upper[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

std::vector<std::complex<double>> solve_tridiagonal(const ComplexTridiagonal& sys) {
  const std::size_t n = sys.size();
  std::vector<std::complex<double>> c(n), d(n), x(n);
  std::complex<double> pivot = sys.diag[0];
  if (std::abs(pivot) < 1e-300) throw SingularSystemError("tridiagonal solve: zero pivot");
  c[0] = sys.upper[0] / pivot;
  d[0] = sys.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
    if (std::abs(pivot) < 1e-300) {
      throw SingularSystemError("tridiagonal solve: vanishing pivot at row " + std::to_string(i));
    }
    c[i] = sys.upper[i] / pivot;
    d[i] = (sys.rhs[i] - sys.lower[i] * d[i - 1]) / pivot;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

ComplexTridiagonal assemble_gci_system(double beta, double alpha, const ThetaGrid& grid) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("assemble_gci_system: beta must be positive and finite");
  }
  if (!std::isfinite(alpha)) throw DomainError("assemble_gci_system: alpha must be finite");
  check_grid(grid);

  const int n = grid.n;
  const double h = grid.spacing();
  const double d = 1.0 / beta;

  ComplexTridiagonal sys;
  sys.lower.assign(n, 0.0);
  sys.diag.assign(n, 0.0);
  sys.upper.assign(n, 0.0);
  sys.rhs.assign(n, 0.0);

  // Dirichlet rows at both poles (m = 1 regularity).
  sys.diag[0] = 1.0;
  sys.diag[n - 1] = 1.0;

  for (int i = 1; i < n - 1; ++i) {
    const double th = grid.nodes[i];
    const double s = std::sin(th);
    const double thm = th - 0.5 * h;
    const double thp = th + 0.5 * h;
    // half-node weights, normalized by e^{beta cos th} at the node so the
    // exponentials stay O(1) for any beta
    const double wm = std::sin(thm) * std::exp(beta * (std::cos(thm) - std::cos(th)));
    const double wp = std::sin(thp) * std::exp(beta * (std::cos(thp) - std::cos(th)));
    const double sub = d * wm / (h * h * s);
    const double sup = d * wp / (h * h * s);
    sys.lower[i] = sub;
    sys.upper[i] = sup;
    sys.diag[i] = std::complex<double>(-(sub + sup) - d / (s * s), alpha * s);
    sys.rhs[i] = s;
  }
  return sys;
}

GciSolution solve_gci(double beta, double alpha, const ThetaGrid& grid, const GciOptions& opts) {
  const ComplexTridiagonal sys = assemble_gci_system(beta, alpha, grid);
  const std::vector<std::complex<double>> psi = solve_tridiagonal(sys);

  const int n = grid.n;
  const double h = grid.spacing();
  double res2 = 0.0;
  const std::vector<std::complex<double>> ax = sys.apply(psi);
  for (int i = 1; i < n - 1; ++i) {
    res2 += std::norm(ax[i] - sys.rhs[i]) * h;
  }
  const double residual = std::sqrt(res2);
  if (!(residual <= opts.residual_tol)) {
    throw NumericalError("solve_gci: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }

  GciSolution sol;
  sol.grid = grid;
  sol.beta = beta;
  sol.alpha = alpha;
  sol.residual_norm = residual;
  sol.psi1.resize(n);
  sol.psi2.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.psi1[i] = psi[i].real();
    sol.psi2[i] = psi[i].imag();
  }
  return sol;
}

AbIntegrals compute_ab(const GciSolution& sol) {
  const double beta = sol.beta;
  const double z = vmf_normalization(beta);
  const int n = sol.grid.n;
  AbIntegrals out;
  for (int i = 0; i < n; ++i) {
    const double th = sol.grid.nodes[i];
    const double s = std::sin(th);
    const double f = std::exp(beta * std::cos(th)) / z;
    const double w = 0.5 * sol.grid.weights[i] * f * s * s;
    out.a1 += w * sol.psi1[i];
    out.a2 += w * sol.psi2[i];
    out.b1 += w * std::cos(th) * sol.psi1[i];
    out.b2 += w * std::cos(th) * sol.psi2[i];
  }
  if (!std::isfinite(out.a1) || !std::isfinite(out.a2) || !std::isfinite(out.b1) ||
      !std::isfinite(out.b2)) {
    throw NumericalError("compute_ab: non-finite coefficient integral");
  }
  return out;
}

HydroCoefficients compute_coefficients(const ModelParams& params, const ThetaGrid& grid,
                                       const GciOptions& opts) {
  params.validate();
  const double beta = params.beta();
  const GciSolution sol = solve_gci(beta, params.alpha, grid, opts);
  const AbIntegrals ab = compute_ab(sol);

  HydroCoefficients hc;
  hc.a1 = ab.a1;
  hc.a2 = ab.a2;
  hc.b1 = ab.b1;
  hc.b2 = ab.b2;
  hc.rho_a = std::hypot(ab.a1, ab.a2);
  hc.rho_b = std::hypot(ab.b1, ab.b2);
  if (hc.rho_a < 1e-14) {
    throw NumericalError("compute_coefficients: degenerate similitude matrix (rho_a ~ 0)");
  }
  hc.theta_a = std::atan2(ab.a2, ab.a1);
  hc.theta_b = std::atan2(ab.b2, ab.b1);
  hc.c2 = hc.rho_b / hc.rho_a;
  hc.delta = principal_angle(hc.theta_b - hc.theta_a);
  hc.c1 = langevin_c1(beta);
  hc.lambda = std::sqrt(params.d / hc.c1);
  hc.a = hc.c2 / hc.c1;
  hc.d = params.d;
  hc.alpha = params.alpha;
  hc.residual_norm = sol.residual_norm;
  hc.grid_n = grid.n;
  return hc;
}

}  // namespace sohp
