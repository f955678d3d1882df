#include "sohp/llg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sohp {

namespace {

double neumaier_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (const double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

struct Stencil {
  const OrientationField& f;
  int ip(int i) const { return (i + 1 == f.nx) ? 0 : i + 1; }
  int im(int i) const { return (i == 0) ? f.nx - 1 : i - 1; }
  int jp(int j) const { return (j + 1 == f.ny) ? 0 : j + 1; }
  int jm(int j) const { return (j == 0) ? f.ny - 1 : j - 1; }
};

}  // namespace

OrientationField OrientationField::make(int nx, int ny, double dx) {
  OrientationField f;
  f.nx = nx;
  f.ny = ny;
  f.dx = dx;
  f.omega.assign(static_cast<std::size_t>(nx) * ny, Vec3{0.0, 0.0, 1.0});
  f.rho.assign(f.omega.size(), 1.0);
  f.validate();
  return f;
}

double OrientationField::renormalize() {
  double drift = 0.0;
  for (auto& w : omega) {
    const double n = w.norm();
    drift = std::max(drift, std::abs(n - 1.0));
    w = w / n;
  }
  return drift;
}

double OrientationField::max_norm_deviation() const {
  double dev = 0.0;
  for (const auto& w : omega) dev = std::max(dev, std::abs(w.norm() - 1.0));
  return dev;
}

double OrientationField::mass() const {
  const double cell = two_d() ? dx * dx : dx;
  return neumaier_sum(rho) * cell;
}

LlgCoefficients::LlgCoefficients(double damping_, double precession_)
    : damping(damping_), precession(precession_) {
  if (!(damping >= 0.0)) {
    throw DomainError("LlgCoefficients: damping must be >= 0 (stability restriction)");
  }
  if (!std::isfinite(precession)) throw DomainError("LlgCoefficients: non-finite precession");
}

LlgCoefficients LlgCoefficients::from_physical(const ModelParams& params,
                                               const HydroCoefficients& hc) {
  const double damping = params.kappa * (2.0 * params.d + hc.c2 * std::cos(hc.delta));
  const double precession = params.kappa * (hc.c2 * std::sin(hc.delta) - params.alpha);
  return LlgCoefficients(damping, precession);
}

std::vector<Vec3> ell_term(const OrientationField& field, const HydroCoefficients& coeffs,
                           const ModelParams& params) {
  field.validate();
  const Stencil s{field};
  const double inv_dx2 = 1.0 / (field.dx * field.dx);
  const double inv_2dx = 1.0 / (2.0 * field.dx);
  std::vector<Vec3> ell(field.size());
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      const std::size_t c = field.idx(i, j);
      const auto w = [&](int ii, int jj) {
        const std::size_t k = field.idx(ii, jj);
        return field.rho[k] * field.omega[k];
      };
      Vec3 lap = (w(s.ip(i), j) + w(s.im(i), j) - 2.0 * w(i, j)) * inv_dx2;
      Vec3 grad{(field.rho[field.idx(s.ip(i), j)] - field.rho[field.idx(s.im(i), j)]) * inv_2dx,
                0.0, 0.0};
      if (field.two_d()) {
        lap += (w(i, s.jp(j)) + w(i, s.jm(j)) - 2.0 * w(i, j)) * inv_dx2;
        grad.y = (field.rho[field.idx(i, s.jp(j))] - field.rho[field.idx(i, s.jm(j))]) * inv_2dx;
      }
      const Vec3 raw = params.kappa * coeffs.c1 * lap - params.phi_rep * grad;
      const Vec3& om = field.omega[c];
      ell[c] = raw - raw.dot(om) * om;
    }
  }
  return ell;
}

DiffusiveRhs diffusive_rhs(const OrientationField& field, const HydroCoefficients& coeffs,
                           const ModelParams& params) {
  field.validate();
  params.validate();
  const Stencil s{field};
  const double inv_2dx = 1.0 / (2.0 * field.dx);
  const double c = params.c;
  const double cosd = std::cos(coeffs.delta), sind = std::sin(coeffs.delta);
  const std::vector<Vec3> ell = ell_term(field, coeffs, params);

  DiffusiveRhs rhs;
  rhs.drho.resize(field.size());
  rhs.domega.resize(field.size());
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      const std::size_t k = field.idx(i, j);
      const Vec3& om = field.omega[k];
      const double rho = field.rho[k];

      // conservative transport: d rho/dt = -c c1 div(rho Omega)
      const std::size_t kxp = field.idx(s.ip(i), j), kxm = field.idx(s.im(i), j);
      double div = (field.rho[kxp] * field.omega[kxp].x -
                    field.rho[kxm] * field.omega[kxm].x) *
                   inv_2dx;
      // projected centered derivatives of Omega along the grid axes
      Vec3 gx = (field.omega[kxp] - field.omega[kxm]) * inv_2dx;
      gx -= gx.dot(om) * om;
      Vec3 adv = om.x * gx;
      Vec3 grad_rho{(field.rho[kxp] - field.rho[kxm]) * inv_2dx, 0.0, 0.0};
      if (field.two_d()) {
        const std::size_t kyp = field.idx(i, s.jp(j)), kym = field.idx(i, s.jm(j));
        div += (field.rho[kyp] * field.omega[kyp].y - field.rho[kym] * field.omega[kym].y) *
               inv_2dx;
        Vec3 gy = (field.omega[kyp] - field.omega[kym]) * inv_2dx;
        gy -= gy.dot(om) * om;
        adv += om.y * gy;
        grad_rho.y = (field.rho[kyp] - field.rho[kym]) * inv_2dx;
      }
      rhs.drho[k] = -c * coeffs.c1 * div;

      const Vec3 pgrad = grad_rho - grad_rho.dot(om) * om;
      Vec3 dom = -c * coeffs.c2 * cosd * adv - c * coeffs.c2 * sind * om.cross(adv) -
                 (c * params.d / rho) * pgrad;
      dom += (1.0 / (rho * coeffs.c1)) *
             ((2.0 * params.d + coeffs.c2 * cosd) * ell[k] -
              (coeffs.c2 * sind - params.alpha) * om.cross(ell[k]));
      rhs.domega[k] = dom;
    }
  }
  return rhs;
}

double max_stable_dt_diffusive(const OrientationField& field, const HydroCoefficients& coeffs,
                               const ModelParams& params) {
  double rho_min = std::numeric_limits<double>::infinity();
  for (const double r : field.rho) rho_min = std::min(rho_min, r);
  if (!(rho_min > 0.0)) throw DomainError("max_stable_dt_diffusive: rho must be positive");
  const double dim = field.dim();
  const double diff = params.kappa *
                      (2.0 * params.d + std::abs(coeffs.c2) +
                       std::abs(coeffs.c2 * std::sin(coeffs.delta) - params.alpha)) /
                      rho_min;
  const double adv = params.c * (coeffs.c1 + std::abs(coeffs.c2) + params.d / rho_min);
  const double dt_par = (diff > 0.0) ? field.dx * field.dx / (2.0 * dim * diff)
                                     : std::numeric_limits<double>::infinity();
  const double dt_adv =
      (adv > 0.0) ? field.dx / adv : std::numeric_limits<double>::infinity();
  return std::min(dt_par, dt_adv);
}

double max_stable_dt_llg(const OrientationField& field, const LlgCoefficients& llg) {
  const double scale = llg.damping + std::abs(llg.precession);
  if (scale <= 0.0) return std::numeric_limits<double>::infinity();
  return field.dx * field.dx / (2.0 * field.dim() * scale);
}

namespace {

OrientationField apply_update(const OrientationField& base, const DiffusiveRhs& rhs, double dt,
                              double new_time, double* drift) {
  OrientationField out = base;
  for (std::size_t k = 0; k < base.size(); ++k) {
    out.rho[k] = base.rho[k] + dt * rhs.drho[k];
    out.omega[k] = base.omega[k] + dt * rhs.domega[k];
  }
  const double d = out.renormalize();
  if (drift) *drift = std::max(*drift, d);
  out.time = new_time;
  return out;
}

}  // namespace

OrientationField step_diffusive(const OrientationField& field, const HydroCoefficients& coeffs,
                                const ModelParams& params, double dt,
                                double* pre_projection_drift) {
  if (!(2.0 * params.d + coeffs.c2 * std::cos(coeffs.delta) >= 0.0)) {
    throw DomainError("step_diffusive: 2d + c2 cos(delta) < 0 violates the stability condition");
  }
  if (!(dt > 0.0)) throw DomainError("step_diffusive: dt must be positive");
  const double bound = max_stable_dt_diffusive(field, coeffs, params);
  if (dt > bound) {
    throw CflError("step_diffusive: dt = " + std::to_string(dt) + " exceeds stability bound " +
                   std::to_string(bound));
  }
  double drift = 0.0;
  const DiffusiveRhs k1 = diffusive_rhs(field, coeffs, params);
  const OrientationField mid =
      apply_update(field, k1, 0.5 * dt, field.time + 0.5 * dt, &drift);
  const DiffusiveRhs k2 = diffusive_rhs(mid, coeffs, params);
  OrientationField out = apply_update(field, k2, dt, field.time + dt, &drift);
  if (pre_projection_drift) *pre_projection_drift = drift;
  return out;
}

namespace {

std::vector<Vec3> llg_rhs(const OrientationField& field, const LlgCoefficients& llg) {
  const Stencil s{field};
  const double inv_dx2 = 1.0 / (field.dx * field.dx);
  std::vector<Vec3> rhs(field.size());
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      const std::size_t k = field.idx(i, j);
      Vec3 lap = (field.omega[field.idx(s.ip(i), j)] + field.omega[field.idx(s.im(i), j)] -
                  2.0 * field.omega[k]) *
                 inv_dx2;
      if (field.two_d()) {
        lap += (field.omega[field.idx(i, s.jp(j))] + field.omega[field.idx(i, s.jm(j))] -
                2.0 * field.omega[k]) *
               inv_dx2;
      }
      const Vec3& om = field.omega[k];
      const Vec3 plap = lap - lap.dot(om) * om;
      rhs[k] = llg.damping * plap - llg.precession * om.cross(lap);
    }
  }
  return rhs;
}

OrientationField apply_omega_update(const OrientationField& base, const std::vector<Vec3>& rhs,
                                    double dt, double new_time, double* drift) {
  OrientationField out = base;
  for (std::size_t k = 0; k < base.size(); ++k) out.omega[k] = base.omega[k] + dt * rhs[k];
  const double d = out.renormalize();
  if (drift) *drift = std::max(*drift, d);
  out.time = new_time;
  return out;
}

}  // namespace

OrientationField llg_step(const OrientationField& field, const LlgCoefficients& llg, double dt,
                          double* pre_projection_drift) {
  field.validate();
  if (!(dt > 0.0)) throw DomainError("llg_step: dt must be positive");
  const double bound = max_stable_dt_llg(field, llg);
  if (dt > bound) {
    throw CflError("llg_step: dt = " + std::to_string(dt) + " exceeds stability bound " +
                   std::to_string(bound));
  }
  double drift = 0.0;
  const std::vector<Vec3> k1 = llg_rhs(field, llg);
  const OrientationField mid =
      apply_omega_update(field, k1, 0.5 * dt, field.time + 0.5 * dt, &drift);
  const std::vector<Vec3> k2 = llg_rhs(mid, llg);
  OrientationField out = apply_omega_update(field, k2, dt, field.time + dt, &drift);
  if (pre_projection_drift) *pre_projection_drift = drift;
  return out;
}

double dirichlet_energy(const OrientationField& field) {
  field.validate();
  const Stencil s{field};
  const double cell = field.two_d() ? field.dx * field.dx : field.dx;
  const double inv_dx2 = 1.0 / (field.dx * field.dx);
  double acc = 0.0;
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      const std::size_t k = field.idx(i, j);
      acc += (field.omega[field.idx(s.ip(i), j)] - field.omega[k]).norm2() * inv_dx2;
      if (field.two_d()) {
        acc += (field.omega[field.idx(i, s.jp(j))] - field.omega[k]).norm2() * inv_dx2;
      }
    }
  }
  return 0.5 * acc * cell;
}

}  // namespace sohp
