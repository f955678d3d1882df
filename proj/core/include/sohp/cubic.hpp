#pragma once

#include <array>
#include <complex>

namespace sohp {

/// Monic cubic X^3 + p2 X^2 + p1 X + p0.
struct CubicCoefficients {
  double p2 = 0.0;
  double p1 = 0.0;
  double p0 = 0.0;
};

struct RootClassification {
  std::array<std::complex<double>, 3> roots;  // sorted by (Re, Im)
  bool all_real = false;
  double max_imag = 0.0;
};

/// Polynomial discriminant 18 b c d - 4 b^3 d + b^2 c^2 - 4 c^3 - 27 d^2
/// for X^3 + b X^2 + c X + d. Positive: three distinct real roots; zero:
/// repeated real roots; negative: one real root and a conjugate pair.
double cubic_discriminant(const CubicCoefficients& c);

/// Sign test of the discriminant with a roundoff band scaled to the
/// magnitudes of its five terms; boundary (repeated-root) cases count as real.
bool discriminant_all_real(const CubicCoefficients& c);

/// Closed-form roots: trigonometric branch when the discriminant band says
/// all-real, Cardano otherwise. A root is classified real when
/// |Im| <= tol_im (1 + |Re|).
RootClassification solve_cubic(const CubicCoefficients& c, double tol_im = 1e-9);

}  // namespace sohp
