#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sohp/gci.hpp"

namespace sohp {

/// Hydrodynamic state (rho, theta, varphi) on a periodic uniform z-grid.
/// Time is the rescaled time t' = c c1 t of the first-order system.
struct StateField1D {
  double dz = 0.0;
  std::vector<double> rho;
  std::vector<double> theta;
  std::vector<double> varphi;
  double time = 0.0;

  std::size_t size() const { return rho.size(); }
  double length() const { return dz * static_cast<double>(rho.size()); }
  /// Total mass sum(rho_i) dz, accumulated with compensated summation.
  double mass() const;
};

using FluxMatrix = std::array<std::array<double, 3>, 3>;

/// The z-direction flux matrix C(U) acting on U = (rho_hat, theta, varphi):
///   [ cos t        -l sin t          0                  ]
///   [ -l sin t      a cos d cos t   -a sin d sin t cos t ]
///   [ 0             a sin d cos t / sin t   a cos d cos t ]
/// Latitudes with sin t <= sin_theta_min are outside the chart and rejected.
FluxMatrix flux_matrix(double theta, double a, double lambda, double delta,
                       double sin_theta_min = 0.1);

/// max |root| of the characteristic cubic at this latitude.
double spectral_radius(double theta, double a, double lambda, double delta);

/// Pointwise quasilinear right-hand side in rescaled time:
/// d/dt' (rho_hat, theta, varphi) = -C(U) (d/dz of the same variables).
std::array<double, 3> quasilinear_rhs(double theta, double rho_hat_z, double theta_z,
                                      double varphi_z, double a, double lambda, double delta,
                                      double sin_theta_min = 0.1);

struct HydroOptions {
  double cfl = 0.45;            // dt <= cfl dz / max |eigenvalue|
  double sin_theta_min = 0.1;   // chart-validity floor on sin(theta)
};

/// One Rusanov step of the quasilinear system; the mass equation is advanced
/// in conservative form d rho/dt' + d(rho cos theta)/dz = 0. Refuses to step
/// states outside the verified-hyperbolic region or the spherical chart.
StateField1D step_hydro(const StateField1D& state, const HydroCoefficients& coeffs, double dt,
                        const HydroOptions& opts = {});

/// Physical time corresponding to a rescaled time t' = c c1 t.
double physical_time(double rescaled_time, double c, double c1);

struct HydroInitialData {
  std::string preset = "uniform";  // uniform | equatorial_wave | polar_wave
  double rho0 = 1.0;
  double theta0 = 1.5707963267948966;
  double phi0 = 3.141592653589793;
  double amp_rho = 0.0;
  double amp_theta = 0.0;
  double amp_phi = 0.0;
  int mode_m = 1;
};

StateField1D make_hydro_state(int n, double length, const HydroInitialData& init);

struct HydroRunConfig {
  int n = 256;
  double length = 6.283185307179586;
  double cfl = 0.45;
  double sin_theta_min = 0.1;
  double t_final = 0.0;   // rescaled time
  double out_dt = 0.1;    // snapshot cadence in rescaled time
  HydroInitialData init;
  HydroCoefficients coeffs;
};

struct HydroRunResult {
  std::vector<StateField1D> snapshots;
  std::uint64_t steps = 0;
};

/// Integrate to t_final, collecting snapshots at t = 0, out_dt, 2 out_dt, ...
/// Step errors are rethrown with the step index and node location attached.
HydroRunResult run_hydro(const HydroRunConfig& config);

}  // namespace sohp
