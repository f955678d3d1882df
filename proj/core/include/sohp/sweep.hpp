#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sohp {

/// Coefficient/hyperbolicity table over a (d, alpha) grid. Points are
/// independent; rows are emitted in grid order regardless of worker count,
/// so the CSV bytes do not depend on parallelism.
struct SweepConfig {
  std::vector<double> d_values;
  std::vector<double> alpha_values;
  int grid_n = 2001;
  int theta_n = 1001;
  int workers = 1;
};

struct SweepResult {
  std::string csv;
  std::size_t n_points = 0;
  std::size_t n_errors = 0;
};

/// Per-point solver failures land in the `error` column instead of aborting
/// the sweep. At most 10^4 grid points.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace sohp
