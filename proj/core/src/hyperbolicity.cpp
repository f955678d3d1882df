#include "sohp/hyperbolicity.hpp"

#include <cmath>
#include <numbers>

#include "sohp/errors.hpp"

namespace sohp {

CubicCoefficients char_poly(double theta, double a, double lambda, double delta) {
  if (!(lambda >= 0.0)) throw DomainError("char_poly: requires lambda >= 0");
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cd = std::cos(delta);
  CubicCoefficients cc;
  cc.p2 = -(1.0 + 2.0 * a * cd) * ct;
  cc.p1 = a * (a + 2.0 * cd) * ct * ct - lambda * lambda * st * st;
  cc.p0 = a * (lambda * lambda * cd * st * st - a * ct * ct) * ct;
  return cc;
}

HyperbolicityReport scan_hyperbolicity(double a, double lambda, double delta,
                                       const std::vector<double>& thetas) {
  HyperbolicityReport report;
  report.theta_grid = thetas;
  report.flags.resize(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double th = thetas[i];
    if (th < -1e-12 || th > std::numbers::pi + 1e-12) {
      throw DomainError("scan_hyperbolicity: theta samples must lie in [0, pi]");
    }
    report.flags[i] = solve_cubic(char_poly(th, a, lambda, delta)).all_real;
  }
  // merge adjacent flagged samples into closed intervals
  std::size_t i = 0;
  while (i < thetas.size()) {
    if (!report.flags[i]) {
      std::size_t j = i;
      while (j + 1 < thetas.size() && !report.flags[j + 1]) ++j;
      report.nonhyperbolic_set.emplace_back(thetas[i], thetas[j]);
      i = j + 1;
    } else {
      ++i;
    }
  }
  return report;
}

HyperbolicityReport scan_hyperbolicity(double a, double lambda, double delta, int n_theta) {
  if (n_theta < 1) throw DomainError("scan_hyperbolicity: n_theta must be >= 1");
  std::vector<double> thetas(n_theta);
  if (n_theta == 1) {
    thetas[0] = 0.5 * std::numbers::pi;
  } else {
    for (int i = 0; i < n_theta; ++i) thetas[i] = std::numbers::pi * i / (n_theta - 1);
  }
  return scan_hyperbolicity(a, lambda, delta, thetas);
}

HyperbolicityReport scan_hyperbolicity(const HydroCoefficients& hc, int n_theta) {
  return scan_hyperbolicity(hc.a, hc.lambda, hc.delta, n_theta);
}

double nonhyperbolic_extent(const HyperbolicityReport& report) {
  if (report.nonhyperbolic_set.empty()) return 0.0;
  const auto& first = report.nonhyperbolic_set.front();
  if (first.first > 0.0) return 0.0;
  return first.second;
}

}  // namespace sohp
