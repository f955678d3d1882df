#pragma once

#include <cstdint>
#include <string>

#include "sohp/field.hpp"

namespace sohp {

/// Named initial data for orientation fields.
///   uniform       constant Omega = (theta0, phi0), rho = rho0
///   spin_wave     cone of angle cone_theta precessing mode_m times across x
///   random_smooth seeded low-mode Fourier perturbation of (theta, phi)
struct FieldPreset {
  std::string name = "uniform";
  double theta0 = 0.0;
  double phi0 = 0.0;
  double cone_theta = 0.7853981633974483;
  int mode_m = 1;
  double amp = 0.3;
  double rho0 = 1.0;
  double rho_amp = 0.0;
  std::uint64_t seed = 0;
};

OrientationField make_orientation_field(int nx, int ny, double dx, const FieldPreset& preset);

}  // namespace sohp
