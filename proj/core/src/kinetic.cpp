#include "sohp/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "sohp/errors.hpp"
#include "sohp/sphere.hpp"

namespace sohp {

namespace {

constexpr std::size_t kBlock = 4096;  // reduction block, independent of thread count
constexpr std::uint32_t kStreamInit = 0;
constexpr std::uint32_t kStreamDynamics = 1;
constexpr std::uint32_t kStreamPositions = 2;

template <class F>
void parallel_over(std::size_t n, int threads, F&& body) {
  if (threads <= 1 || n < 2 * kBlock) {
    body(0, n);
    return;
  }
  const int t = std::min<std::size_t>(threads, (n + kBlock - 1) / kBlock);
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

Vec3 block_sum_mean(const std::vector<Vec3>& vs, int threads) {
  const std::size_t n = vs.size();
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<Vec3> partial(nblocks);
  parallel_over(nblocks, threads, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      Vec3 acc;
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(n, lo + kBlock);
      for (std::size_t i = lo; i < hi; ++i) acc += vs[i];
      partial[b] = acc;
    }
  });
  Vec3 total;
  for (const auto& p : partial) total += p;  // fixed combine order
  return total / static_cast<double>(n);
}

void check_sde_params(const ParticleEnsemble& ens, double d, double alpha, double dt,
                      const SdeOptions& opts) {
  if (ens.velocities.empty()) throw DomainError("sde_step: empty ensemble");
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("sde_step: requires d > 0");
  if (!std::isfinite(alpha)) throw DomainError("sde_step: alpha must be finite");
  if (!(dt > 0.0)) throw DomainError("sde_step: dt must be positive");
  if (dt > opts.dt_guard / (1.0 + std::abs(alpha))) {
    throw CflError("sde_step: dt = " + std::to_string(dt) + " exceeds guard " +
                   std::to_string(opts.dt_guard / (1.0 + std::abs(alpha))));
  }
}

void advance(ParticleEnsemble& ens, const UnitVec3& omega, double d, double alpha, double dt,
             const SdeOptions& opts) {
  const Philox4x32 rng{ens.rng_seed};
  const double noise = std::sqrt(2.0 * d * dt);
  const std::uint32_t step = ens.step_count;
  parallel_over(ens.velocities.size(), opts.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      const Vec3 v = ens.velocities[p];
      const Vec3 drift =
          (omega.vec() - omega.dot(v) * v) + alpha * omega.cross(v);
      const auto blk = rng.block(p, step, kStreamDynamics);
      const auto [g1, g2] = normal_pair(blk[0], blk[1]);
      const UnitVec3 u{v};
      const auto [e1, e2] = tangent_basis(u);
      Vec3 w = v + dt * drift + noise * (g1 * e1 + g2 * e2);
      ens.velocities[p] = w / w.norm();
    }
  });
  ens.step_count += 1;
  ens.time += dt;
}

}  // namespace

Vec3 ensemble_mean(const ParticleEnsemble& ens) {
  if (ens.velocities.empty()) throw DomainError("ensemble_mean: empty ensemble");
  return block_sum_mean(ens.velocities, 1);
}

UnitVec3 ensemble_mean_direction(const ParticleEnsemble& ens) {
  const Vec3 m = ensemble_mean(ens);
  if (m.norm() < 1e-12) {
    throw DegenerateMeanError("ensemble mean velocity < 1e-12; direction undefined");
  }
  return UnitVec3{m};
}

ParticleEnsemble make_ensemble(std::int64_t n, std::uint64_t seed, double init_beta,
                               const UnitVec3& axis) {
  if (n < 1) throw DomainError("make_ensemble: need at least one particle");
  if (init_beta < 0.0 || !std::isfinite(init_beta)) {
    throw DomainError("make_ensemble: init_beta must be >= 0 and finite");
  }
  ParticleEnsemble ens;
  ens.rng_seed = seed;
  ens.velocities.resize(n);
  const Philox4x32 rng{seed};
  const auto [e1, e2] = tangent_basis(axis);
  for (std::int64_t p = 0; p < n; ++p) {
    const auto blk = rng.block(static_cast<std::uint64_t>(p), 0, kStreamInit);
    if (init_beta == 0.0) {
      const auto [g1, g2] = normal_pair(blk[0], blk[1]);
      const auto [g3, g4] = normal_pair(blk[2], blk[3]);
      (void)g4;
      Vec3 v{g1, g2, g3};
      const double norm = v.norm();
      ens.velocities[p] = (norm > 1e-12) ? v / norm : Vec3{0.0, 0.0, 1.0};
    } else {
      const double u = vmf_cos_quantile(uniform_open01(blk[0]), init_beta);
      const double phi = 2.0 * std::numbers::pi * uniform_open01(blk[1]);
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      ens.velocities[p] =
          u * axis.vec() + s * (std::cos(phi) * e1 + std::sin(phi) * e2);
    }
  }
  return ens;
}

void sde_step_fixed(ParticleEnsemble& ens, const UnitVec3& omega, double d, double alpha,
                    double dt, const SdeOptions& opts) {
  check_sde_params(ens, d, alpha, dt, opts);
  advance(ens, omega, d, alpha, dt, opts);
}

void sde_step_self_consistent(ParticleEnsemble& ens, double d, double alpha, double dt,
                              const SdeOptions& opts) {
  check_sde_params(ens, d, alpha, dt, opts);
  const Vec3 m = block_sum_mean(ens.velocities, opts.threads);
  if (m.norm() < 1e-12) {
    throw DegenerateMeanError("sde_step: ensemble mean velocity < 1e-12 in self-consistent mode");
  }
  advance(ens, UnitVec3{m}, d, alpha, dt, opts);
}

void transport_positions(ParticleEnsemble& ens, double c, double dt, double box) {
  if (ens.positions.size() != ens.velocities.size()) {
    throw DomainError("transport_positions: ensemble has no positions");
  }
  if (!(box > 0.0)) throw DomainError("transport_positions: box must be positive");
  for (std::size_t p = 0; p < ens.positions.size(); ++p) {
    Vec3 x = ens.positions[p] + c * dt * ens.velocities[p];
    x.x -= box * std::floor(x.x / box);
    x.y -= box * std::floor(x.y / box);
    x.z -= box * std::floor(x.z / box);
    ens.positions[p] = x;
  }
}

std::vector<double> cos_theta_samples(const ParticleEnsemble& ens, const UnitVec3& axis) {
  std::vector<double> us(ens.velocities.size());
  for (std::size_t i = 0; i < us.size(); ++i) us[i] = axis.dot(ens.velocities[i]);
  return us;
}

EquilibriumDiagnostics equilibrium_diagnostics(const ParticleEnsemble& ens, double beta) {
  if (ens.velocities.size() < 1000) {
    throw DomainError("equilibrium_diagnostics: need N >= 1000 for KS statistics");
  }
  const Vec3 m = ensemble_mean(ens);
  if (m.norm() < 1e-12) {
    throw DegenerateMeanError("equilibrium_diagnostics: degenerate ensemble mean");
  }
  EquilibriumDiagnostics out;
  out.mean_resultant = m.norm();
  out.omega_hat = UnitVec3{m};

  std::vector<double> us = cos_theta_samples(ens, out.omega_hat);
  std::sort(us.begin(), us.end());
  const double n = static_cast<double>(us.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double f = vmf_cos_cdf(us[i], beta);
    ks = std::max(ks, std::abs((i + 1.0) / n - f));
    ks = std::max(ks, std::abs(i / n - f));
  }
  out.ks_distance = ks;
  return out;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double ks = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    ks = std::max(ks, std::abs(i / na - j / nb));
  }
  return ks;
}

KineticMode kinetic_mode_from_string(const std::string& name) {
  if (name == "fixed_omega") return KineticMode::FixedOmega;
  if (name == "self_consistent") return KineticMode::SelfConsistent;
  if (name == "spatial_demo") return KineticMode::SpatialDemo;
  throw DomainError("kinetic mode must be fixed_omega, self_consistent or spatial_demo");
}

RelaxationResult run_relaxation(const KineticConfig& config) {
  if (config.n < 1000) throw DomainError("run_relaxation: requires n >= 1000");
  if (!(config.d > 0.0)) throw DomainError("run_relaxation: requires d > 0");
  if (!(config.t_final >= 0.0)) throw DomainError("run_relaxation: t_final must be >= 0");
  if (!(config.diag_dt > 0.0)) throw DomainError("run_relaxation: diag_dt must be positive");

  const double burn_in = (config.burn_in < 0.0) ? 5.0 / config.d : config.burn_in;
  const double beta = 1.0 / config.d;
  SdeOptions opts;
  opts.threads = config.threads;

  ParticleEnsemble ens =
      make_ensemble(config.n, config.seed, config.init_beta, config.omega0);
  if (config.mode == KineticMode::SpatialDemo) {
    ens.positions.resize(ens.velocities.size());
    const Philox4x32 rng{config.seed};
    for (std::size_t p = 0; p < ens.positions.size(); ++p) {
      const auto blk = rng.block(p, 0, kStreamPositions);
      ens.positions[p] = Vec3{uniform_open01(blk[0]), uniform_open01(blk[1]),
                              uniform_open01(blk[2])} *
                         config.box;
    }
  }

  RelaxationResult result;
  result.rows.push_back({0.0, equilibrium_diagnostics(ens, beta)});
  if (config.t_final > 0.0) {
    const std::uint64_t n_steps =
        static_cast<std::uint64_t>(std::llround(config.t_final / config.dt));
    if (n_steps == 0) throw DomainError("run_relaxation: t_final shorter than one step");
    const std::uint64_t stride =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(config.diag_dt / config.dt)));
    for (std::uint64_t s = 1; s <= n_steps; ++s) {
      switch (config.mode) {
        case KineticMode::FixedOmega:
          sde_step_fixed(ens, config.omega0, config.d, config.alpha, config.dt, opts);
          break;
        case KineticMode::SelfConsistent:
          sde_step_self_consistent(ens, config.d, config.alpha, config.dt, opts);
          break;
        case KineticMode::SpatialDemo:
          sde_step_self_consistent(ens, config.d, config.alpha, config.dt, opts);
          transport_positions(ens, config.c, config.dt, config.box);
          break;
      }
      ens.time = static_cast<double>(s) * config.dt;  // avoid accumulation drift
      const bool cadence = (s % stride == 0) || (s == n_steps);
      if (cadence && ens.time >= burn_in) {
        result.rows.push_back({ens.time, equilibrium_diagnostics(ens, beta)});
      }
    }
  }
  result.final_state = std::move(ens);
  return result;
}

}  // namespace sohp
