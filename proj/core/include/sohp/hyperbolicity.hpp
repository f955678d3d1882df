#pragma once

#include <utility>
#include <vector>

#include "sohp/cubic.hpp"
#include "sohp/gci.hpp"

namespace sohp {

/// Characteristic polynomial of the z-direction flux matrix at latitude
/// theta, for coefficients a = c2/c1, lambda = sqrt(d/c1) and phase delta:
///
///   P(X) = X^3 - (1 + 2 a cos d) cos t X^2
///        + (a (a + 2 cos d) cos^2 t - l^2 sin^2 t) X
///        + a (l^2 cos d sin^2 t - a cos^2 t) cos t.
CubicCoefficients char_poly(double theta, double a, double lambda, double delta);

/// Latitude scan: per-sample root classification plus the merged set of
/// intervals on which complex characteristic roots occur.
struct HyperbolicityReport {
  std::vector<double> theta_grid;
  std::vector<bool> flags;  // true = all roots real at that sample
  std::vector<std::pair<double, double>> nonhyperbolic_set;
};

HyperbolicityReport scan_hyperbolicity(double a, double lambda, double delta,
                                       const std::vector<double>& thetas);
HyperbolicityReport scan_hyperbolicity(double a, double lambda, double delta,
                                       int n_theta = 1001);
HyperbolicityReport scan_hyperbolicity(const HydroCoefficients& hc, int n_theta = 1001);

/// Upper end of the non-hyperbolic interval that starts at theta = 0
/// (0 when the scan found none).
double nonhyperbolic_extent(const HyperbolicityReport& report);

}  // namespace sohp
