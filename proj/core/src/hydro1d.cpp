#include "sohp/hydro1d.hpp"

#include <cmath>
#include <numbers>

#include "sohp/cubic.hpp"
#include "sohp/errors.hpp"
#include "sohp/hyperbolicity.hpp"

namespace sohp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

/// Angle difference mapped to (-pi, pi]; keeps the longitude derivative
/// smooth across the 0/2pi seam.
double phi_diff(double a, double b) {
  double d = a - b;
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

void validate_state(const StateField1D& st) {
  if (st.size() < 3) throw DomainError("hydro: grid needs at least 3 nodes");
  if (!(st.dz > 0.0)) throw DomainError("hydro: dz must be positive");
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (!(st.rho[i] > 0.0)) throw DomainError("hydro: rho must be positive everywhere");
  }
}

}  // namespace

double StateField1D::mass() const {
  // Neumaier compensated sum; mass comparisons run at 1e-12 relative.
  double sum = 0.0, comp = 0.0;
  for (const double r : rho) {
    const double t = sum + r;
    if (std::abs(sum) >= std::abs(r)) {
      comp += (sum - t) + r;
    } else {
      comp += (r - t) + sum;
    }
    sum = t;
  }
  return (sum + comp) * dz;
}

FluxMatrix flux_matrix(double theta, double a, double lambda, double delta,
                       double sin_theta_min) {
  const double st = std::sin(theta);
  if (!(st > sin_theta_min)) {
    throw ChartSingularityError("flux_matrix: sin(theta) = " + std::to_string(st) +
                                " at or below chart floor " + std::to_string(sin_theta_min));
  }
  const double ct = std::cos(theta);
  const double cd = std::cos(delta), sd = std::sin(delta);
  FluxMatrix m;
  m[0] = {ct, -lambda * st, 0.0};
  m[1] = {-lambda * st, a * cd * ct, -a * sd * st * ct};
  m[2] = {0.0, a * sd * ct / st, a * cd * ct};
  return m;
}

double spectral_radius(double theta, double a, double lambda, double delta) {
  const RootClassification rc = solve_cubic(char_poly(theta, a, lambda, delta));
  double r = 0.0;
  for (const auto& z : rc.roots) r = std::max(r, std::abs(z));
  return r;
}

std::array<double, 3> quasilinear_rhs(double theta, double rho_hat_z, double theta_z,
                                      double varphi_z, double a, double lambda, double delta,
                                      double sin_theta_min) {
  const FluxMatrix m = flux_matrix(theta, a, lambda, delta, sin_theta_min);
  const std::array<double, 3> uz{rho_hat_z, theta_z, varphi_z};
  std::array<double, 3> rhs{};
  for (int r = 0; r < 3; ++r) {
    rhs[r] = -(m[r][0] * uz[0] + m[r][1] * uz[1] + m[r][2] * uz[2]);
  }
  return rhs;
}

StateField1D step_hydro(const StateField1D& state, const HydroCoefficients& coeffs, double dt,
                        const HydroOptions& opts) {
  validate_state(state);
  if (!(dt > 0.0)) throw DomainError("step_hydro: dt must be positive");
  const std::size_t n = state.size();
  const double dz = state.dz;
  const double a = coeffs.a, lambda = coeffs.lambda, delta = coeffs.delta;

  // Per-node admissibility and wave speeds.
  std::vector<double> speed(n);
  double smax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double th = state.theta[i];
    if (!(std::sin(th) > opts.sin_theta_min)) {
      throw ChartSingularityError("step_hydro: node " + std::to_string(i) +
                                  " has sin(theta) <= " + std::to_string(opts.sin_theta_min));
    }
    if (!discriminant_all_real(char_poly(th, a, lambda, delta))) {
      throw HyperbolicityError("step_hydro: node " + std::to_string(i) + " (theta = " +
                                   std::to_string(th) + ") is outside the hyperbolic region",
                               i, th);
    }
    speed[i] = spectral_radius(th, a, lambda, delta);
    smax = std::max(smax, speed[i]);
  }
  if (dt > opts.cfl * dz / smax) {
    throw CflError("step_hydro: dt = " + std::to_string(dt) + " exceeds CFL bound " +
                   std::to_string(opts.cfl * dz / smax));
  }

  const auto next = [n](std::size_t i) { return (i + 1 == n) ? 0 : i + 1; };
  const auto prev = [n](std::size_t i) { return (i == 0) ? n - 1 : i - 1; };

  // Interface speeds and conservative Rusanov mass fluxes F_{i+1/2}.
  std::vector<double> sface(n), flux(n), rho_hat(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = next(i);
    sface[i] = std::max(speed[i], speed[j]);
    const double fl = state.rho[i] * std::cos(state.theta[i]);
    const double fr = state.rho[j] * std::cos(state.theta[j]);
    flux[i] = 0.5 * (fl + fr) - 0.5 * sface[i] * (state.rho[j] - state.rho[i]);
    rho_hat[i] = lambda * std::log(state.rho[i]);
  }

  StateField1D out;
  out.dz = dz;
  out.time = state.time + dt;
  out.rho.resize(n);
  out.theta.resize(n);
  out.varphi.resize(n);

  const double nu = dt / dz;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = next(i), im = prev(i);
    out.rho[i] = state.rho[i] - nu * (flux[i] - flux[im]);

    const double drho_hat = (rho_hat[ip] - rho_hat[im]) / (2.0 * dz);
    const double dtheta = (state.theta[ip] - state.theta[im]) / (2.0 * dz);
    const double dphi = (phi_diff(state.varphi[ip], state.varphi[i]) +
                         phi_diff(state.varphi[i], state.varphi[im])) /
                        (2.0 * dz);
    const std::array<double, 3> rhs = quasilinear_rhs(state.theta[i], drho_hat, dtheta, dphi, a,
                                                      lambda, delta, opts.sin_theta_min);
    const double diss_theta = (sface[i] * (state.theta[ip] - state.theta[i]) -
                               sface[im] * (state.theta[i] - state.theta[im])) /
                              (2.0 * dz);
    const double diss_phi = (sface[i] * phi_diff(state.varphi[ip], state.varphi[i]) -
                             sface[im] * phi_diff(state.varphi[i], state.varphi[im])) /
                            (2.0 * dz);
    out.theta[i] = state.theta[i] + dt * (rhs[1] + diss_theta);
    out.varphi[i] = wrap_phi(state.varphi[i] + dt * (rhs[2] + diss_phi));
  }
  return out;
}

double physical_time(double rescaled_time, double c, double c1) {
  if (!(c > 0.0) || !(c1 > 0.0)) {
    throw DomainError("physical_time: requires c > 0 and c1 > 0");
  }
  return rescaled_time / (c * c1);
}

StateField1D make_hydro_state(int n, double length, const HydroInitialData& init) {
  if (n < 3) throw DomainError("make_hydro_state: n must be >= 3");
  if (!(length > 0.0)) throw DomainError("make_hydro_state: length must be positive");
  StateField1D st;
  st.dz = length / n;
  st.rho.resize(n);
  st.theta.resize(n);
  st.varphi.resize(n);
  const double k = kTwoPi * init.mode_m / length;
  for (int i = 0; i < n; ++i) {
    const double z = i * st.dz;
    if (init.preset == "uniform") {
      st.rho[i] = init.rho0;
      st.theta[i] = init.theta0;
      st.varphi[i] = wrap_phi(init.phi0);
    } else if (init.preset == "equatorial_wave" || init.preset == "polar_wave") {
      st.rho[i] = init.rho0 * (1.0 + init.amp_rho * std::cos(k * z));
      st.theta[i] = init.theta0 + init.amp_theta * std::sin(k * z);
      st.varphi[i] = wrap_phi(init.phi0 + init.amp_phi * std::sin(k * z));
    } else {
      throw DomainError("make_hydro_state: unknown preset '" + init.preset + "'");
    }
    if (!(st.rho[i] > 0.0)) {
      throw DomainError("make_hydro_state: preset produced non-positive rho");
    }
  }
  return st;
}

HydroRunResult run_hydro(const HydroRunConfig& config) {
  if (!(config.t_final >= 0.0)) throw DomainError("run_hydro: t_final must be >= 0");
  if (!(config.out_dt > 0.0)) throw DomainError("run_hydro: out_dt must be positive");
  HydroOptions opts;
  opts.cfl = config.cfl;
  opts.sin_theta_min = config.sin_theta_min;

  StateField1D st = make_hydro_state(config.n, config.length, config.init);
  HydroRunResult result;
  result.snapshots.push_back(st);
  if (config.t_final == 0.0) return result;

  double t_next = config.out_dt;
  const double t_end = config.t_final;
  while (st.time < t_end - 1e-12 * t_end) {
    double smax = 0.0;
    for (std::size_t i = 0; i < st.size(); ++i) {
      smax = std::max(smax,
                      spectral_radius(st.theta[i], config.coeffs.a, config.coeffs.lambda,
                                      config.coeffs.delta));
    }
    double dt = opts.cfl * st.dz / smax;
    dt = std::min(dt, t_next - st.time);
    dt = std::min(dt, t_end - st.time);
    try {
      st = step_hydro(st, config.coeffs, dt, opts);
    } catch (const HyperbolicityError& e) {
      throw HyperbolicityError("run_hydro: step " + std::to_string(result.steps + 1) + ": " +
                                   e.what(),
                               e.node(), e.theta());
    }
    ++result.steps;
    if (st.time >= t_next - 1e-12) {
      result.snapshots.push_back(st);
      t_next += config.out_dt;
    }
  }
  return result;
}

}  // namespace sohp
