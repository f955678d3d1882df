#include "sohp/field_presets.hpp"

#include <cmath>
#include <numbers>

#include "sohp/philox.hpp"
#include "sohp/sphere.hpp"

namespace sohp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

OrientationField make_orientation_field(int nx, int ny, double dx, const FieldPreset& preset) {
  OrientationField f = OrientationField::make(nx, ny, dx);
  const double lx = nx * dx;
  const double ly = ny * dx;
  if (!(preset.rho0 > 0.0) || std::abs(preset.rho_amp) >= 1.0) {
    throw DomainError("make_orientation_field: rho preset must stay positive");
  }

  // seeded mode coefficients for the random preset (stream 3)
  const Philox4x32 rng{preset.seed};
  double coef[8];
  {
    const auto b0 = rng.block(0, 0, 3);
    const auto b1 = rng.block(1, 0, 3);
    for (int k = 0; k < 4; ++k) coef[k] = 2.0 * uniform_open01(b0[k]) - 1.0;
    for (int k = 0; k < 4; ++k) coef[4 + k] = kTwoPi * uniform_open01(b1[k]);
  }

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = i * dx;
      const double y = j * dx;
      const std::size_t k = f.idx(i, j);
      f.rho[k] = preset.rho0 * (1.0 + preset.rho_amp * std::cos(kTwoPi * x / lx));
      if (preset.name == "uniform") {
        f.omega[k] = unit_from_spherical(preset.theta0, preset.phi0).vec();
      } else if (preset.name == "spin_wave") {
        const double ph = kTwoPi * preset.mode_m * x / lx;
        f.omega[k] = unit_from_spherical(preset.cone_theta, ph).vec();
      } else if (preset.name == "random_smooth") {
        double th = preset.theta0 + preset.amp * (coef[0] * std::sin(kTwoPi * x / lx + coef[4]) +
                                                  coef[1] * std::sin(2.0 * kTwoPi * x / lx + coef[5]));
        double ph = preset.phi0 + preset.amp * (coef[2] * std::sin(kTwoPi * x / lx + coef[6]));
        if (ny > 1) {
          th += preset.amp * coef[3] * std::sin(kTwoPi * y / ly + coef[7]);
          ph += preset.amp * coef[0] * std::sin(kTwoPi * y / ly + coef[5]);
        }
        f.omega[k] = unit_from_spherical(th, ph).vec();
      } else {
        throw DomainError("make_orientation_field: unknown preset '" + preset.name + "'");
      }
    }
  }
  return f;
}

}  // namespace sohp
