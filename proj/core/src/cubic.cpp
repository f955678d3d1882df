#include "sohp/cubic.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

namespace sohp {

namespace {

double discriminant_scale(const CubicCoefficients& cc) {
  const double b = cc.p2, c = cc.p1, d = cc.p0;
  return 18.0 * std::abs(b * c * d) + 4.0 * std::abs(b * b * b * d) + b * b * c * c +
         4.0 * std::abs(c * c * c) + 27.0 * d * d + DBL_MIN;
}

bool roots_less(const std::complex<double>& u, const std::complex<double>& v) {
  if (u.real() != v.real()) return u.real() < v.real();
  return u.imag() < v.imag();
}

}  // namespace

double cubic_discriminant(const CubicCoefficients& cc) {
  const double b = cc.p2, c = cc.p1, d = cc.p0;
  return 18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c -
         27.0 * d * d;
}

bool discriminant_all_real(const CubicCoefficients& cc) {
  const double band = 64.0 * DBL_EPSILON * discriminant_scale(cc);
  return cubic_discriminant(cc) >= -band;
}

RootClassification solve_cubic(const CubicCoefficients& cc, double tol_im) {
  const double b = cc.p2, c = cc.p1, d = cc.p0;
  const double q = (b * b - 3.0 * c) / 9.0;
  const double r = (2.0 * b * b * b - 9.0 * b * c + 27.0 * d) / 54.0;

  RootClassification out;
  if (discriminant_all_real(cc)) {
    // Three real roots (repeated roots land here through the band).
    if (q <= 0.0) {
      // q >= 0 whenever the roots are real; q ~ 0 means a triple root.
      const double x = -b / 3.0;
      out.roots = {x, x, x};
    } else {
      const double sq = std::sqrt(q);
      const double arg = std::clamp(r / (q * sq), -1.0, 1.0);
      const double t = std::acos(arg);
      std::array<double, 3> xs{
          -2.0 * sq * std::cos(t / 3.0) - b / 3.0,
          -2.0 * sq * std::cos((t + 2.0 * std::numbers::pi) / 3.0) - b / 3.0,
          -2.0 * sq * std::cos((t - 2.0 * std::numbers::pi) / 3.0) - b / 3.0};
      std::sort(xs.begin(), xs.end());
      out.roots = {xs[0], xs[1], xs[2]};
    }
  } else {
    const double a_mag = std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q));
    const double a_c = (r >= 0.0) ? -a_mag : a_mag;
    const double b_c = (a_c == 0.0) ? 0.0 : q / a_c;
    const double x_real = (a_c + b_c) - b / 3.0;
    const double re_pair = -0.5 * (a_c + b_c) - b / 3.0;
    const double im_pair = 0.5 * std::sqrt(3.0) * (a_c - b_c);
    std::array<std::complex<double>, 3> roots{
        std::complex<double>(x_real, 0.0),
        std::complex<double>(re_pair, -std::abs(im_pair)),
        std::complex<double>(re_pair, std::abs(im_pair))};
    std::sort(roots.begin(), roots.end(), roots_less);
    out.roots = roots;
  }

  out.max_imag = 0.0;
  out.all_real = true;
  for (const auto& z : out.roots) {
    out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
    if (std::abs(z.imag()) > tol_im * (1.0 + std::abs(z.real()))) out.all_real = false;
  }
  std::sort(out.roots.begin(), out.roots.end(), roots_less);
  return out;
}

}  // namespace sohp
