#pragma once

#include <utility>

#include "sohp/quadrature.hpp"
#include "sohp/vec3.hpp"

namespace sohp {

/// Projection of a onto the plane normal to v: a - (a.v) v.
Vec3 project_tangent(const UnitVec3& v, const Vec3& a);

/// Deterministic orthonormal tangent pair {e1, e2} at v (branchless
/// Pixar-style construction; continuous away from the -z pole).
std::pair<Vec3, Vec3> tangent_basis(const UnitVec3& v);

/// Von-Mises-Fischer parameters: density on S^2 proportional to
/// exp(beta v.axis), beta = 1/d.
struct VmfParams {
  double beta;
  UnitVec3 axis;

  VmfParams(double beta_, const UnitVec3& axis_);
};

/// Normalization integral Z(beta) = int_{S^2} exp(beta v.axis) dv
/// = 4 pi sinh(beta)/beta.
double vmf_normalization(double beta);

/// Density value at u = v.axis in [-1, 1].
double vmf_density(double u, const VmfParams& p);

/// CDF of the marginal of u = v.axis under the VMF law:
/// (exp(beta u) - exp(-beta)) / (exp(beta) - exp(-beta)).
double vmf_cos_cdf(double u, double beta);

/// Inverse of vmf_cos_cdf (exact sampling of the cosine marginal).
double vmf_cos_quantile(double p, double beta);

/// First moment c1(beta) = int F_Omega (v.Omega) dv evaluated by
/// Gauss-Legendre quadrature in u = cos(theta).
double langevin_c1(double beta);
double langevin_c1(double beta, const GaussLegendre& rule);

/// Spherical angles of a unit vector: theta in [0, pi], varphi in [0, 2 pi).
/// varphi is 0 by convention when sin(theta) <= 1e-8.
std::pair<double, double> spherical_from_unit(const UnitVec3& omega);

/// Omega = (sin t cos p, sin t sin p, cos t).
UnitVec3 unit_from_spherical(double theta, double varphi);

/// Latitude/longitude frame vectors d(Omega)/d(theta), d(Omega)/d(varphi).
Vec3 omega_dtheta(double theta, double varphi);
Vec3 omega_dvarphi(double theta, double varphi);

/// Reduce an angle difference to the principal branch (-pi, pi].
double principal_angle(double angle);

}  // namespace sohp
