#pragma once

#include <cmath>

#include "sohp/errors.hpp"

namespace sohp {

/// Physical and kernel parameters shared by the solvers.
///   c        self-propulsion speed
///   d        angular noise intensity (> 0); beta = 1/d
///   alpha    precession strength
///   kappa    alignment-kernel second moment k = (1/2n) int K(|xi|) |xi|^2 dxi
///   phi_rep  repulsion-kernel mass phi = int Phi(|xi|) dxi
/// The kernel mass k0 is fixed to 1.
struct ModelParams {
  double c = 1.0;
  double d = 1.0;
  double alpha = 0.0;
  double kappa = 0.0;
  double phi_rep = 0.0;

  static constexpr double k0 = 1.0;

  void validate() const {
    if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("ModelParams: requires d > 0");
    if (!(c >= 0.0)) throw DomainError("ModelParams: requires c >= 0");
    if (!(kappa >= 0.0)) throw DomainError("ModelParams: requires kappa >= 0");
    if (!(phi_rep >= 0.0)) throw DomainError("ModelParams: requires phi_rep >= 0");
    if (!std::isfinite(alpha)) throw DomainError("ModelParams: alpha must be finite");
  }

  double beta() const { return 1.0 / d; }
};

}  // namespace sohp
