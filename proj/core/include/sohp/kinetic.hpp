#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sohp/philox.hpp"
#include "sohp/vec3.hpp"

namespace sohp {

/// Velocity samples on the unit sphere (positions only in the spatial demo).
/// The recorded seed plus the step counter drive the counter-based generator,
/// so runs replay exactly for any worker count.
struct ParticleEnsemble {
  std::vector<Vec3> velocities;
  std::vector<Vec3> positions;
  std::uint64_t rng_seed = 0;
  double time = 0.0;
  std::uint32_t step_count = 0;
};

struct SdeOptions {
  int threads = 1;
  double dt_guard = 0.01;  // require dt <= dt_guard / (1 + |alpha|)
};

/// Ensemble mean velocity, reduced over fixed 4096-particle blocks so the
/// result does not depend on the thread count.
Vec3 ensemble_mean(const ParticleEnsemble& ens);

/// Normalized mean; DegenerateMeanError when |mean| < 1e-12.
UnitVec3 ensemble_mean_direction(const ParticleEnsemble& ens);

/// Initial ensembles: uniform on the sphere (beta = 0) or exact VMF samples
/// about `axis` (beta > 0), drawn from the seed's init stream.
ParticleEnsemble make_ensemble(std::int64_t n, std::uint64_t seed, double init_beta,
                               const UnitVec3& axis);

/// One Euler-Maruyama step in the tangent plane with renormalization:
/// v <- normalize(v + dt (P_perp(v) Omega + alpha Omega x v) + sqrt(2 d dt) xi).
void sde_step_fixed(ParticleEnsemble& ens, const UnitVec3& omega, double d, double alpha,
                    double dt, const SdeOptions& opts = {});

/// Same update with Omega recomputed from the ensemble each step.
void sde_step_self_consistent(ParticleEnsemble& ens, double d, double alpha, double dt,
                              const SdeOptions& opts = {});

/// Free transport x <- x + c v dt in a periodic box (spatial demo only).
void transport_positions(ParticleEnsemble& ens, double c, double dt, double box);

struct EquilibriumDiagnostics {
  double mean_resultant = 0.0;
  UnitVec3 omega_hat;
  double ks_distance = 0.0;
};

/// Mean resultant length, empirical mean direction, and the KS distance of
/// the cos(theta) sample (theta measured from the empirical direction)
/// against the VMF cosine marginal at concentration beta. Needs N >= 1000.
EquilibriumDiagnostics equilibrium_diagnostics(const ParticleEnsemble& ens, double beta);

/// Two-sample Kolmogorov-Smirnov distance (consumes copies; sorts internally).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// cos(theta) samples of an ensemble about a given axis.
std::vector<double> cos_theta_samples(const ParticleEnsemble& ens, const UnitVec3& axis);

enum class KineticMode { FixedOmega, SelfConsistent, SpatialDemo };

KineticMode kinetic_mode_from_string(const std::string& name);

struct KineticConfig {
  std::int64_t n = 100000;
  double d = 1.0;
  double alpha = 0.0;
  double dt = 0.005;
  double t_final = 10.0;
  std::uint64_t seed = 0;
  KineticMode mode = KineticMode::FixedOmega;
  UnitVec3 omega0{0.0, 0.0, 1.0};
  double diag_dt = 1.0;
  double burn_in = -1.0;    // < 0 means the default 5/d
  double init_beta = 0.0;   // 0 = uniform initial ensemble
  int threads = 1;
  double c = 1.0;           // spatial demo only
  double box = 1.0;         // spatial demo only
};

struct DiagnosticsRow {
  double time = 0.0;
  EquilibriumDiagnostics diag;
};

struct RelaxationResult {
  std::vector<DiagnosticsRow> rows;
  ParticleEnsemble final_state;
};

/// Iterate the SDE, sampling diagnostics at the configured cadence. The
/// initial row is always emitted; later rows only once t >= burn_in.
RelaxationResult run_relaxation(const KineticConfig& config);

}  // namespace sohp
