#include "sohp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "sohp/errors.hpp"

namespace sohp {

GaussLegendre make_gauss_legendre(int n) {
  if (n < 1) throw DomainError("make_gauss_legendre: n must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;  // roots come in +/- pairs
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n at x.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const GaussLegendre& default_sphere_rule() {
  static const GaussLegendre rule = make_gauss_legendre(256);
  return rule;
}

ThetaGrid ThetaGrid::uniform(int n) {
  if (n < 2) throw DomainError("ThetaGrid: need at least 2 nodes");
  ThetaGrid g;
  g.n = n;
  g.nodes.resize(n);
  g.weights.assign(n, 0.0);
  const double h = std::numbers::pi / (n - 1);
  for (int i = 0; i < n; ++i) g.nodes[i] = i * h;
  g.nodes[0] = 0.0;
  g.nodes[n - 1] = std::numbers::pi;
  if (n >= 3 && (n - 1) % 2 == 0) {
    // composite Simpson
    for (int i = 0; i < n; ++i) {
      double c;
      if (i == 0 || i == n - 1)
        c = 1.0;
      else if (i % 2 == 1)
        c = 4.0;
      else
        c = 2.0;
      g.weights[i] = c * h / 3.0;
    }
  } else {
    // composite trapezoid
    for (int i = 0; i < n; ++i) g.weights[i] = (i == 0 || i == n - 1) ? h / 2.0 : h;
  }
  return g;
}

double ThetaGrid::spacing() const {
  if (n < 2) throw DomainError("ThetaGrid::spacing: degenerate grid");
  return std::numbers::pi / (n - 1);
}

}  // namespace sohp
