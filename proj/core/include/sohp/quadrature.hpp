#pragma once

#include <cstddef>
#include <vector>

namespace sohp {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Nodes and weights by Newton iteration on the Legendre polynomial.
GaussLegendre make_gauss_legendre(int n);

/// The shared default rule (256 nodes) used by the sphere integrals.
const GaussLegendre& default_sphere_rule();

/// Uniform latitude grid on [0, pi] carrying composite quadrature weights
/// for integrals in d(theta): Simpson when the interval count is even,
/// trapezoid otherwise. Weights are positive and sum to pi.
struct ThetaGrid {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static ThetaGrid uniform(int n);

  double spacing() const;

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

}  // namespace sohp
