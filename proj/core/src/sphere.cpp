#include "sohp/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sohp/errors.hpp"

namespace sohp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleSinTheta = 1e-8;
}  // namespace

Vec3 project_tangent(const UnitVec3& v, const Vec3& a) {
  return a - a.dot(v.vec()) * v.vec();
}

std::pair<Vec3, Vec3> tangent_basis(const UnitVec3& v) {
  const double x = v.x(), y = v.y(), z = v.z();
  const double s = std::copysign(1.0, z);
  const double a = -1.0 / (s + z);
  const double b = x * y * a;
  Vec3 e1{1.0 + s * x * x * a, s * b, -s * x};
  Vec3 e2{b, s + y * y * a, -y};
  return {e1, e2};
}

VmfParams::VmfParams(double beta_, const UnitVec3& axis_) : beta(beta_), axis(axis_) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("VmfParams: beta must be positive and finite");
  }
}

double vmf_normalization(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("vmf_normalization: beta must be positive and finite");
  }
  return 4.0 * std::numbers::pi * std::sinh(beta) / beta;
}

double vmf_density(double u, const VmfParams& p) {
  if (!(u >= -1.0 && u <= 1.0)) {
    throw DomainError("vmf_density: u must lie in [-1, 1]");
  }
  // exp(beta u) / (4 pi sinh(beta)/beta), written with the exponential
  // shifted by beta so large concentrations do not overflow.
  const double beta = p.beta;
  const double z_scaled = kTwoPi * (-std::expm1(-2.0 * beta)) / beta;  // Z * exp(-beta)
  return std::exp(beta * (u - 1.0)) / z_scaled;
}

double vmf_cos_cdf(double u, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("vmf_cos_cdf: beta must be positive and finite");
  }
  u = std::clamp(u, -1.0, 1.0);
  const double den = -std::expm1(-2.0 * beta);
  return (std::expm1(beta * (u - 1.0)) - std::expm1(-2.0 * beta)) / den;
}

double vmf_cos_quantile(double p, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("vmf_cos_quantile: beta must be positive and finite");
  }
  p = std::clamp(p, 0.0, 1.0);
  const double u = 1.0 + std::log1p((1.0 - p) * std::expm1(-2.0 * beta)) / beta;
  return std::clamp(u, -1.0, 1.0);
}

double langevin_c1(double beta) { return langevin_c1(beta, default_sphere_rule()); }

double langevin_c1(double beta, const GaussLegendre& rule) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("langevin_c1: beta must be positive and finite");
  }
  // Ratio of int exp(beta u) u du to int exp(beta u) du on [-1, 1];
  // the azimuthal 2 pi cancels. Shift by beta to stay in range.
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double w = rule.weights[i] * std::exp(beta * (u - 1.0));
    num += w * u;
    den += w;
  }
  return num / den;
}

std::pair<double, double> spherical_from_unit(const UnitVec3& omega) {
  const double z = std::clamp(omega.z(), -1.0, 1.0);
  const double theta = std::acos(z);
  const double sin_theta = std::hypot(omega.x(), omega.y());
  if (sin_theta <= kPoleSinTheta) return {theta, 0.0};
  double varphi = std::atan2(omega.y(), omega.x());
  if (varphi < 0.0) varphi += kTwoPi;
  if (varphi >= kTwoPi) varphi = 0.0;
  return {theta, varphi};
}

UnitVec3 unit_from_spherical(double theta, double varphi) {
  const double st = std::sin(theta);
  return UnitVec3{st * std::cos(varphi), st * std::sin(varphi), std::cos(theta)};
}

Vec3 omega_dtheta(double theta, double varphi) {
  const double ct = std::cos(theta), st = std::sin(theta);
  return {ct * std::cos(varphi), ct * std::sin(varphi), -st};
}

Vec3 omega_dvarphi(double theta, double varphi) {
  const double st = std::sin(theta);
  return {-st * std::sin(varphi), st * std::cos(varphi), 0.0};
}

double principal_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a > std::numbers::pi) a -= kTwoPi;
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

}  // namespace sohp
