#include "sohp/sweep.hpp"

#include <atomic>
#include <thread>

#include "sohp/csv.hpp"
#include "sohp/errors.hpp"
#include "sohp/gci.hpp"
#include "sohp/hyperbolicity.hpp"

namespace sohp {

namespace {

std::string sweep_point_row(double d, double alpha, int grid_n, int theta_n) {
  std::vector<std::string> cells;
  cells.push_back(format_double(d));
  cells.push_back(format_double(alpha));
  try {
    ModelParams params;
    params.d = d;
    params.alpha = alpha;
    const ThetaGrid grid = ThetaGrid::uniform(grid_n);
    const HydroCoefficients hc = compute_coefficients(params, grid);
    const HyperbolicityReport report = scan_hyperbolicity(hc, theta_n);
    cells.push_back(format_double(hc.c1));
    cells.push_back(format_double(hc.c2));
    cells.push_back(format_double(hc.delta));
    cells.push_back(format_double(hc.lambda));
    cells.push_back(format_double(hc.a));
    cells.push_back(format_double(hc.residual_norm));
    cells.push_back(format_double(nonhyperbolic_extent(report)));
    cells.push_back("");
  } catch (const std::exception& e) {
    for (int k = 0; k < 7; ++k) cells.push_back("");
    cells.push_back(sanitize_cell(e.what()));
  }
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  if (config.d_values.empty() || config.alpha_values.empty()) {
    throw DomainError("run_sweep: empty parameter grid");
  }
  const std::size_t n_points = config.d_values.size() * config.alpha_values.size();
  if (n_points > 10000) throw DomainError("run_sweep: grid exceeds 10^4 points");
  if (config.workers < 1) throw DomainError("run_sweep: workers must be >= 1");

  std::vector<std::string> rows(n_points);
  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= n_points) break;
      const double d = config.d_values[i / config.alpha_values.size()];
      const double alpha = config.alpha_values[i % config.alpha_values.size()];
      rows[i] = sweep_point_row(d, alpha, config.grid_n, config.theta_n);
    }
  };
  if (config.workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < config.workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.n_points = n_points;
  result.csv = "d,alpha,c1,c2,delta,lambda,a,residual,theta_star,error\n";
  for (const std::string& r : rows) {
    result.csv += r;
    // error column non-empty <=> row ends with something after the last comma
    const std::size_t last_comma = r.find_last_of(',');
    if (last_comma + 2 < r.size()) ++result.n_errors;
  }
  return result;
}

}  // namespace sohp
