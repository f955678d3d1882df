// sohp: coefficients, hyperbolicity scans and integrators for the
// alignment-with-precession hydrodynamic model, plus the kinetic particle
// oracle. One subcommand per solver; every run writes a manifest that echoes
// the fully resolved config so outputs can be reproduced byte-for-byte.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sohp/config.hpp"
#include "sohp/csv.hpp"
#include "sohp/errors.hpp"
#include "sohp/field_presets.hpp"
#include "sohp/gci.hpp"
#include "sohp/hydro1d.hpp"
#include "sohp/hyperbolicity.hpp"
#include "sohp/kinetic.hpp"
#include "sohp/llg.hpp"
#include "sohp/manifest.hpp"
#include "sohp/sweep.hpp"
#include "sohp/version.hpp"

namespace fs = std::filesystem;
using namespace sohp;

namespace {

constexpr double kPi = std::numbers::pi;

struct HandlerResult {
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::pair<std::string, std::string>> info;
};

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      throw DomainError("config: key '" + key + "': cannot parse '" + token + "' as number");
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) {
      throw DomainError("config: key '" + key + "': cannot parse '" + token + "' as number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw DomainError("config: key '" + key + "' holds an empty list");
  return values;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw DomainError("config: grid count must be >= 1");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
  } else {
    for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  }
  return v;
}

HydroCoefficients coefficients_from_config(const ConfigMap& raw, const ResolvedConfig& cfg,
                                           HandlerResult& result) {
  const bool has_gci = raw.has("d");
  const bool has_explicit = raw.has("a") || raw.has("lambda") || raw.has("delta");
  if (has_gci && has_explicit) {
    throw DomainError("config: give either (d, alpha) or explicit (a, lambda, delta), not both");
  }
  if (has_gci) {
    ModelParams params;
    params.d = cfg.get_double("d");
    params.alpha = cfg.get_double("alpha");
    const int n = static_cast<int>(cfg.get_int("grid_n"));
    const HydroCoefficients hc = compute_coefficients(params, ThetaGrid::uniform(n));
    result.diagnostics.emplace_back("gci_residual", hc.residual_norm);
    result.info.emplace_back("coefficients_source", "gci");
    return hc;
  }
  if (!(raw.has("a") && raw.has("lambda") && raw.has("delta"))) {
    throw DomainError("config: explicit coefficients need all of a, lambda, delta");
  }
  HydroCoefficients hc;
  hc.a = cfg.get_double("a");
  hc.lambda = cfg.get_double("lambda");
  hc.delta = cfg.get_double("delta");
  if (!(hc.lambda >= 0.0)) throw DomainError("config: constraint violated: lambda >= 0");
  hc.c1 = raw.has("c1") ? cfg.get_double("c1") : 0.0;
  hc.c2 = hc.a * hc.c1;
  result.info.emplace_back("coefficients_source", "explicit");
  return hc;
}

// ---------------------------------------------------------------------------
// coeffs

HandlerResult run_coeffs(const ConfigMap& raw, const std::string& out_dir,
                         ResolvedConfig& resolved) {
  const std::vector<FieldSpec> schema = {
      {"d", FieldType::Double, true, "", FieldCheck::Positive},
      {"alpha", FieldType::Double, false, "0", FieldCheck::None},
      {"grid_n", FieldType::Int, false, "2001", FieldCheck::Positive},
      {"seed", FieldType::Int, false, "", FieldCheck::NonNegative},
  };
  resolved = validate_config(raw, schema, "coeffs");

  ModelParams params;
  params.d = resolved.get_double("d");
  params.alpha = resolved.get_double("alpha");
  const int n = static_cast<int>(resolved.get_int("grid_n"));
  const HydroCoefficients hc = compute_coefficients(params, ThetaGrid::uniform(n));

  CsvWriter csv;
  csv.header({"d", "alpha", "c1", "c2", "delta", "lambda", "a", "residual"});
  csv.row({format_double(hc.d), format_double(hc.alpha), format_double(hc.c1),
           format_double(hc.c2), format_double(hc.delta), format_double(hc.lambda),
           format_double(hc.a), format_double(hc.residual_norm)});
  write_text_file(out_path(out_dir, "coeffs.csv"), csv.str());

  HandlerResult result;
  result.outputs = {"coeffs.csv"};
  result.diagnostics = {{"residual", hc.residual_norm}, {"c1", hc.c1}, {"c2", hc.c2},
                        {"delta", hc.delta}};
  result.info = {{"grid", std::to_string(n) + " uniform latitude nodes"},
                 {"residual_tolerance", "1e-8"}};
  return result;
}

// ---------------------------------------------------------------------------
// hyperbolicity

HandlerResult run_hyperbolicity(const ConfigMap& raw, const std::string& out_dir,
                                ResolvedConfig& resolved) {
  const std::vector<FieldSpec> schema = {
      {"d", FieldType::Double, false, "", FieldCheck::Positive},
      {"alpha", FieldType::Double, false, "0", FieldCheck::None},
      {"grid_n", FieldType::Int, false, "2001", FieldCheck::Positive},
      {"a", FieldType::Double, false, "", FieldCheck::None},
      {"lambda", FieldType::Double, false, "", FieldCheck::NonNegative},
      {"delta", FieldType::Double, false, "", FieldCheck::None},
      {"c1", FieldType::Double, false, "", FieldCheck::Positive},
      {"theta_n", FieldType::Int, false, "1001", FieldCheck::Positive},
      {"seed", FieldType::Int, false, "", FieldCheck::NonNegative},
  };
  resolved = validate_config(raw, schema, "hyperbolicity");

  HandlerResult result;
  const HydroCoefficients hc = coefficients_from_config(raw, resolved, result);
  const int theta_n = static_cast<int>(resolved.get_int("theta_n"));
  const HyperbolicityReport report = scan_hyperbolicity(hc, theta_n);

  CsvWriter csv;
  csv.header({"theta", "re1", "im1", "re2", "im2", "re3", "im3", "all_real"});
  for (std::size_t i = 0; i < report.theta_grid.size(); ++i) {
    const double th = report.theta_grid[i];
    const RootClassification rc = solve_cubic(char_poly(th, hc.a, hc.lambda, hc.delta));
    csv.row({format_double(th), format_double(rc.roots[0].real()),
             format_double(rc.roots[0].imag()), format_double(rc.roots[1].real()),
             format_double(rc.roots[1].imag()), format_double(rc.roots[2].real()),
             format_double(rc.roots[2].imag()), report.flags[i] ? "1" : "0"});
  }
  write_text_file(out_path(out_dir, "roots.csv"), csv.str());

  std::string intervals = "[";
  for (std::size_t i = 0; i < report.nonhyperbolic_set.size(); ++i) {
    if (i) intervals += ", ";
    intervals += "[" + format_double(report.nonhyperbolic_set[i].first) + ", " +
                 format_double(report.nonhyperbolic_set[i].second) + "]";
  }
  intervals += "]";
  std::string summary = "{\n  \"a\": " + format_double(hc.a) +
                        ",\n  \"lambda\": " + format_double(hc.lambda) +
                        ",\n  \"delta\": " + format_double(hc.delta) +
                        ",\n  \"theta_samples\": " + std::to_string(theta_n) +
                        ",\n  \"nonhyperbolic_intervals\": " + intervals +
                        ",\n  \"extent_from_zero\": " +
                        format_double(nonhyperbolic_extent(report)) + "\n}\n";
  write_text_file(out_path(out_dir, "nonhyperbolic.json"), summary);

  result.outputs = {"roots.csv", "nonhyperbolic.json"};
  result.diagnostics.emplace_back("nonhyperbolic_extent", nonhyperbolic_extent(report));
  result.diagnostics.emplace_back("nonhyperbolic_intervals",
                                  static_cast<double>(report.nonhyperbolic_set.size()));
  return result;
}

// ---------------------------------------------------------------------------
// hydro

void write_hydro_snapshot(const std::string& path, const StateField1D& st) {
  CsvWriter csv;
  csv.header({"z", "rho", "theta", "varphi"});
  for (std::size_t i = 0; i < st.size(); ++i) {
    csv.row({format_double(i * st.dz), format_double(st.rho[i]), format_double(st.theta[i]),
             format_double(st.varphi[i])});
  }
  write_text_file(path, csv.str());
}

HandlerResult run_hydro(const ConfigMap& raw, const std::string& out_dir,
                        ResolvedConfig& resolved) {
  const std::vector<FieldSpec> schema = {
      {"n", FieldType::Int, false, "256", FieldCheck::Positive},
      {"length", FieldType::Double, false, "6.283185307179586", FieldCheck::Positive},
      {"cfl", FieldType::Double, false, "0.45", FieldCheck::Positive},
      {"sin_theta_min", FieldType::Double, false, "0.1", FieldCheck::Positive},
      {"t_final", FieldType::Double, true, "", FieldCheck::NonNegative},
      {"out_dt", FieldType::Double, false, "0.1", FieldCheck::Positive},
      {"preset", FieldType::String, false, "uniform", FieldCheck::None},
      {"rho0", FieldType::Double, false, "1", FieldCheck::Positive},
      {"theta0", FieldType::Double, false, "1.5707963267948966", FieldCheck::None},
      {"phi0", FieldType::Double, false, "3.141592653589793", FieldCheck::None},
      {"amp_rho", FieldType::Double, false, "0", FieldCheck::None},
      {"amp_theta", FieldType::Double, false, "0", FieldCheck::None},
      {"amp_phi", FieldType::Double, false, "0", FieldCheck::None},
      {"mode_m", FieldType::Int, false, "1", FieldCheck::Positive},
      {"c", FieldType::Double, false, "", FieldCheck::Positive},
      {"d", FieldType::Double, false, "", FieldCheck::Positive},
      {"alpha", FieldType::Double, false, "0", FieldCheck::None},
      {"grid_n", FieldType::Int, false, "2001", FieldCheck::Positive},
      {"a", FieldType::Double, false, "", FieldCheck::None},
      {"lambda", FieldType::Double, false, "", FieldCheck::NonNegative},
      {"delta", FieldType::Double, false, "", FieldCheck::None},
      {"c1", FieldType::Double, false, "", FieldCheck::Positive},
      {"seed", FieldType::Int, false, "", FieldCheck::NonNegative},
  };
  resolved = validate_config(raw, schema, "hydro");

  HandlerResult result;
  HydroRunConfig run;
  run.coeffs = coefficients_from_config(raw, resolved, result);
  run.n = static_cast<int>(resolved.get_int("n"));
  run.length = resolved.get_double("length");
  run.cfl = resolved.get_double("cfl");
  run.sin_theta_min = resolved.get_double("sin_theta_min");
  run.t_final = resolved.get_double("t_final");
  run.out_dt = resolved.get_double("out_dt");
  run.init.preset = resolved.get_string("preset");
  run.init.rho0 = resolved.get_double("rho0");
  run.init.theta0 = resolved.get_double("theta0");
  run.init.phi0 = resolved.get_double("phi0");
  run.init.amp_rho = resolved.get_double("amp_rho");
  run.init.amp_theta = resolved.get_double("amp_theta");
  run.init.amp_phi = resolved.get_double("amp_phi");
  run.init.mode_m = static_cast<int>(resolved.get_int("mode_m"));

  const HydroRunResult out = run_hydro(run);

  char name[64];
  const double mass0 = out.snapshots.front().mass();
  for (std::size_t s = 0; s < out.snapshots.size(); ++s) {
    std::snprintf(name, sizeof(name), "snapshot_%06zu.csv", s);
    write_hydro_snapshot(out_path(out_dir, name), out.snapshots[s]);
    result.outputs.emplace_back(name);
  }
  const double mass1 = out.snapshots.back().mass();

  result.diagnostics.emplace_back("steps", static_cast<double>(out.steps));
  result.diagnostics.emplace_back("mass_initial", mass0);
  result.diagnostics.emplace_back("mass_final", mass1);
  result.diagnostics.emplace_back("mass_rel_drift", std::abs(mass1 - mass0) / mass0);
  result.info.emplace_back("time_unit", "rescaled t' = c c1 t");
  if (raw.has("c") && run.coeffs.c1 > 0.0) {
    result.diagnostics.emplace_back(
        "t_final_physical",
        physical_time(run.t_final, resolved.get_double("c"), run.coeffs.c1));
  }
  return result;
}

// ---------------------------------------------------------------------------
// diffusive / llg shared pieces

FieldPreset preset_from_config(const ResolvedConfig& cfg) {
  FieldPreset preset;
  preset.name = cfg.get_string("preset");
  preset.theta0 = cfg.get_double("theta0");
  preset.phi0 = cfg.get_double("phi0");
  preset.cone_theta = cfg.get_double("cone_theta");
  preset.mode_m = static_cast<int>(cfg.get_int("mode_m"));
  preset.amp = cfg.get_double("amp");
  preset.rho0 = cfg.get_double("rho0");
  preset.rho_amp = cfg.get_double("rho_amp");
  preset.seed = static_cast<std::uint64_t>(cfg.get_int("seed"));
  return preset;
}

const std::vector<FieldSpec> kFieldSchema = {
    {"dim", FieldType::Int, false, "1", FieldCheck::Positive},
    {"nx", FieldType::Int, false, "64", FieldCheck::Positive},
    {"ny", FieldType::Int, false, "64", FieldCheck::Positive},
    {"dx", FieldType::Double, true, "", FieldCheck::Positive},
    {"cfl", FieldType::Double, false, "0.2", FieldCheck::Positive},
    {"dt", FieldType::Double, false, "", FieldCheck::Positive},
    {"t_final", FieldType::Double, true, "", FieldCheck::NonNegative},
    {"out_dt", FieldType::Double, true, "", FieldCheck::Positive},
    {"preset", FieldType::String, false, "uniform", FieldCheck::None},
    {"theta0", FieldType::Double, false, "0", FieldCheck::None},
    {"phi0", FieldType::Double, false, "0", FieldCheck::None},
    {"cone_theta", FieldType::Double, false, "0.7853981633974483", FieldCheck::None},
    {"mode_m", FieldType::Int, false, "1", FieldCheck::Positive},
    {"amp", FieldType::Double, false, "0.3", FieldCheck::None},
    {"rho0", FieldType::Double, false, "1", FieldCheck::Positive},
    {"rho_amp", FieldType::Double, false, "0", FieldCheck::None},
    {"seed", FieldType::Int, false, "0", FieldCheck::NonNegative},
};

OrientationField field_from_config(const ResolvedConfig& cfg) {
  const int dim = static_cast<int>(cfg.get_int("dim"));
  if (dim != 1 && dim != 2) throw DomainError("config: dim must be 1 or 2");
  const int nx = static_cast<int>(cfg.get_int("nx"));
  const int ny = (dim == 2) ? static_cast<int>(cfg.get_int("ny")) : 1;
  return make_orientation_field(nx, ny, cfg.get_double("dx"), preset_from_config(cfg));
}

void write_field_snapshot(const std::string& path, const OrientationField& f, bool with_rho) {
  CsvWriter csv;
  std::vector<std::string> cols = {"x"};
  if (f.two_d()) cols.push_back("y");
  cols.insert(cols.end(), {"omega_x", "omega_y", "omega_z"});
  if (with_rho) cols.push_back("rho");
  csv.header(cols);
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      const std::size_t k = f.idx(i, j);
      std::vector<std::string> row = {format_double(i * f.dx)};
      if (f.two_d()) row.push_back(format_double(j * f.dx));
      row.push_back(format_double(f.omega[k].x));
      row.push_back(format_double(f.omega[k].y));
      row.push_back(format_double(f.omega[k].z));
      if (with_rho) row.push_back(format_double(f.rho[k]));
      csv.row(row);
    }
  }
  write_text_file(path, csv.str());
}

struct FieldRunSeries {
  std::vector<double> time, energy, mass, norm_drift;

  std::string json() const {
    auto arr = [](const std::vector<double>& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
      }
      return s + "]";
    };
    return "{\n  \"time\": " + arr(time) + ",\n  \"energy\": " + arr(energy) +
           ",\n  \"mass\": " + arr(mass) + ",\n  \"max_norm_drift\": " + arr(norm_drift) +
           "\n}\n";
  }
};

template <class StepFn>
HandlerResult run_field_evolution(const ResolvedConfig& resolved, const std::string& out_dir,
                                  OrientationField field, double dt_bound, StepFn&& step,
                                  bool with_rho) {
  const double t_final = resolved.get_double("t_final");
  const double out_dt = resolved.get_double("out_dt");
  double dt;
  if (resolved.entries().end() !=
      std::find_if(resolved.entries().begin(), resolved.entries().end(),
                   [](const auto& kv) { return kv.first == "dt"; })) {
    dt = resolved.get_double("dt");
  } else {
    if (!std::isfinite(dt_bound)) dt_bound = out_dt;
    dt = resolved.get_double("cfl") * dt_bound;
  }

  HandlerResult result;
  FieldRunSeries series;
  char name[64];
  std::size_t snap = 0;
  auto emit = [&](const OrientationField& f, double drift) {
    std::snprintf(name, sizeof(name), "snapshot_%06zu.csv", snap++);
    write_field_snapshot(out_path(out_dir, name), f, with_rho);
    result.outputs.emplace_back(name);
    series.time.push_back(f.time);
    series.energy.push_back(dirichlet_energy(f));
    series.mass.push_back(f.mass());
    series.norm_drift.push_back(drift);
  };

  emit(field, 0.0);
  double t_next = out_dt;
  std::uint64_t steps = 0;
  while (field.time < t_final - 1e-12 * (1.0 + t_final)) {
    double step_dt = std::min(dt, t_final - field.time);
    step_dt = std::min(step_dt, t_next - field.time);
    double drift = 0.0;
    field = step(field, step_dt, &drift);
    ++steps;
    if (field.time >= t_next - 1e-12) {
      emit(field, drift);
      t_next += out_dt;
    }
  }

  write_text_file(out_path(out_dir, "diagnostics.json"), series.json());
  result.outputs.emplace_back("diagnostics.json");
  result.diagnostics.emplace_back("steps", static_cast<double>(steps));
  result.diagnostics.emplace_back("dt", dt);
  result.diagnostics.emplace_back("energy_initial", series.energy.front());
  result.diagnostics.emplace_back("energy_final", series.energy.back());
  result.diagnostics.emplace_back("mass_rel_drift",
                                  std::abs(series.mass.back() - series.mass.front()) /
                                      series.mass.front());
  return result;
}

HandlerResult run_diffusive(const ConfigMap& raw, const std::string& out_dir,
                            ResolvedConfig& resolved) {
  std::vector<FieldSpec> schema = kFieldSchema;
  schema.insert(schema.end(), {
      {"c", FieldType::Double, false, "1", FieldCheck::NonNegative},
      {"d", FieldType::Double, true, "", FieldCheck::Positive},
      {"alpha", FieldType::Double, false, "0", FieldCheck::None},
      {"kappa", FieldType::Double, false, "0", FieldCheck::NonNegative},
      {"phi_rep", FieldType::Double, false, "0", FieldCheck::NonNegative},
      {"grid_n", FieldType::Int, false, "2001", FieldCheck::Positive},
      {"c1", FieldType::Double, false, "", FieldCheck::Positive},
      {"c2", FieldType::Double, false, "", FieldCheck::NonNegative},
      {"delta", FieldType::Double, false, "", FieldCheck::None},
  });
  resolved = validate_config(raw, schema, "diffusive");

  ModelParams params;
  params.c = resolved.get_double("c");
  params.d = resolved.get_double("d");
  params.alpha = resolved.get_double("alpha");
  params.kappa = resolved.get_double("kappa");
  params.phi_rep = resolved.get_double("phi_rep");
  params.validate();

  HandlerResult result;
  HydroCoefficients hc;
  const bool has_explicit = raw.has("c1") || raw.has("c2") || raw.has("delta");
  if (has_explicit) {
    if (!(raw.has("c1") && raw.has("c2") && raw.has("delta"))) {
      throw DomainError("config: explicit coefficients need all of c1, c2, delta");
    }
    hc.c1 = resolved.get_double("c1");
    hc.c2 = resolved.get_double("c2");
    hc.delta = resolved.get_double("delta");
    hc.a = hc.c2 / hc.c1;
    hc.lambda = std::sqrt(params.d / hc.c1);
    result.info.emplace_back("coefficients_source", "explicit");
  } else {
    hc = compute_coefficients(params, ThetaGrid::uniform(
                                          static_cast<int>(resolved.get_int("grid_n"))));
    result.diagnostics.emplace_back("gci_residual", hc.residual_norm);
    result.info.emplace_back("coefficients_source", "gci");
  }
  if (2.0 * params.d + hc.c2 * std::cos(hc.delta) < 0.0) {
    throw DomainError("config: 2d + c2 cos(delta) < 0 violates the stability condition");
  }

  OrientationField field = field_from_config(resolved);
  const double bound = max_stable_dt_diffusive(field, hc, params);
  HandlerResult evo = run_field_evolution(
      resolved, out_dir, std::move(field), bound,
      [&](const OrientationField& f, double dt, double* drift) {
        return step_diffusive(f, hc, params, dt, drift);
      },
      /*with_rho=*/true);
  evo.info.insert(evo.info.end(), result.info.begin(), result.info.end());
  evo.diagnostics.insert(evo.diagnostics.end(), result.diagnostics.begin(),
                         result.diagnostics.end());
  return evo;
}

HandlerResult run_llg(const ConfigMap& raw, const std::string& out_dir,
                      ResolvedConfig& resolved) {
  std::vector<FieldSpec> schema = kFieldSchema;
  schema.insert(schema.end(), {
      {"damping", FieldType::Double, false, "", FieldCheck::NonNegative},
      {"precession", FieldType::Double, false, "", FieldCheck::None},
      {"d", FieldType::Double, false, "", FieldCheck::Positive},
      {"alpha", FieldType::Double, false, "0", FieldCheck::None},
      {"kappa", FieldType::Double, false, "1", FieldCheck::NonNegative},
      {"grid_n", FieldType::Int, false, "2001", FieldCheck::Positive},
  });
  resolved = validate_config(raw, schema, "llg");

  HandlerResult result;
  LlgCoefficients llg;
  const bool has_explicit = raw.has("damping") || raw.has("precession");
  if (has_explicit) {
    if (!(raw.has("damping") && raw.has("precession"))) {
      throw DomainError("config: explicit coefficients need both damping and precession");
    }
    if (raw.has("d")) {
      throw DomainError("config: give either (damping, precession) or (d, alpha, kappa)");
    }
    llg = LlgCoefficients(resolved.get_double("damping"), resolved.get_double("precession"));
    result.info.emplace_back("coefficients_source", "explicit");
  } else {
    if (!raw.has("d")) throw DomainError("config: llg needs (damping, precession) or d");
    ModelParams params;
    params.d = resolved.get_double("d");
    params.alpha = resolved.get_double("alpha");
    params.kappa = resolved.get_double("kappa");
    const HydroCoefficients hc = compute_coefficients(
        params, ThetaGrid::uniform(static_cast<int>(resolved.get_int("grid_n"))));
    llg = LlgCoefficients::from_physical(params, hc);
    result.diagnostics.emplace_back("gci_residual", hc.residual_norm);
    result.info.emplace_back("coefficients_source", "gci");
  }
  result.diagnostics.emplace_back("damping", llg.damping);
  result.diagnostics.emplace_back("precession", llg.precession);

  OrientationField field = field_from_config(resolved);
  const double bound = max_stable_dt_llg(field, llg);
  HandlerResult evo = run_field_evolution(
      resolved, out_dir, std::move(field), bound,
      [&](const OrientationField& f, double dt, double* drift) {
        return llg_step(f, llg, dt, drift);
      },
      /*with_rho=*/false);
  evo.info.insert(evo.info.end(), result.info.begin(), result.info.end());
  evo.diagnostics.insert(evo.diagnostics.end(), result.diagnostics.begin(),
                         result.diagnostics.end());
  return evo;
}

// ---------------------------------------------------------------------------
// kinetic

HandlerResult run_kinetic(const ConfigMap& raw, const std::string& out_dir,
                          ResolvedConfig& resolved) {
  const std::vector<FieldSpec> schema = {
      {"n", FieldType::Int, true, "", FieldCheck::Positive},
      {"d", FieldType::Double, true, "", FieldCheck::Positive},
      {"alpha", FieldType::Double, false, "0", FieldCheck::None},
      {"dt", FieldType::Double, false, "0.005", FieldCheck::Positive},
      {"t_final", FieldType::Double, true, "", FieldCheck::NonNegative},
      {"seed", FieldType::Int, false, "0", FieldCheck::NonNegative},
      {"mode", FieldType::String, false, "fixed_omega", FieldCheck::None},
      {"diag_dt", FieldType::Double, false, "1", FieldCheck::Positive},
      {"burn_in", FieldType::Double, false, "-1", FieldCheck::None},
      {"init_beta", FieldType::Double, false, "0", FieldCheck::NonNegative},
      {"threads", FieldType::Int, false, "1", FieldCheck::Positive},
      {"c", FieldType::Double, false, "1", FieldCheck::NonNegative},
      {"box", FieldType::Double, false, "1", FieldCheck::Positive},
      {"dump_final", FieldType::Bool, false, "false", FieldCheck::None},
  };
  resolved = validate_config(raw, schema, "kinetic");

  KineticConfig cfg;
  cfg.n = resolved.get_int("n");
  cfg.d = resolved.get_double("d");
  cfg.alpha = resolved.get_double("alpha");
  cfg.dt = resolved.get_double("dt");
  cfg.t_final = resolved.get_double("t_final");
  cfg.seed = static_cast<std::uint64_t>(resolved.get_int("seed"));
  cfg.mode = kinetic_mode_from_string(resolved.get_string("mode"));
  cfg.diag_dt = resolved.get_double("diag_dt");
  cfg.burn_in = resolved.get_double("burn_in");
  cfg.init_beta = resolved.get_double("init_beta");
  cfg.threads = static_cast<int>(resolved.get_int("threads"));
  cfg.c = resolved.get_double("c");
  cfg.box = resolved.get_double("box");
  if (cfg.mode == KineticMode::SelfConsistent && cfg.init_beta == 0.0) {
    cfg.init_beta = 0.5;  // weakly polarized start so the mean direction is defined
  }

  const RelaxationResult res = run_relaxation(cfg);

  CsvWriter csv;
  csv.header({"time", "mean_resultant", "omega_x", "omega_y", "omega_z", "ks_distance"});
  for (const auto& row : res.rows) {
    csv.row({format_double(row.time), format_double(row.diag.mean_resultant),
             format_double(row.diag.omega_hat.x()), format_double(row.diag.omega_hat.y()),
             format_double(row.diag.omega_hat.z()), format_double(row.diag.ks_distance)});
  }
  write_text_file(out_path(out_dir, "diagnostics.csv"), csv.str());

  HandlerResult result;
  result.outputs = {"diagnostics.csv"};
  if (resolved.get_bool("dump_final")) {
    CsvWriter dump;
    dump.header({"vx", "vy", "vz"});
    for (const Vec3& v : res.final_state.velocities) {
      dump.row({format_double(v.x), format_double(v.y), format_double(v.z)});
    }
    write_text_file(out_path(out_dir, "final_velocities.csv"), dump.str());
    result.outputs.emplace_back("final_velocities.csv");
  }
  result.diagnostics = {
      {"rows", static_cast<double>(res.rows.size())},
      {"final_mean_resultant", res.rows.back().diag.mean_resultant},
      {"final_ks_distance", res.rows.back().diag.ks_distance},
  };
  result.info.emplace_back("rng", "philox4x32-10, counter = (particle, step, stream)");
  return result;
}

// ---------------------------------------------------------------------------
// sweep

HandlerResult run_sweep_cmd(const ConfigMap& raw, const std::string& out_dir,
                            ResolvedConfig& resolved) {
  const std::vector<FieldSpec> schema = {
      {"d_list", FieldType::String, false, "", FieldCheck::None},
      {"d_min", FieldType::Double, false, "", FieldCheck::Positive},
      {"d_max", FieldType::Double, false, "", FieldCheck::Positive},
      {"d_count", FieldType::Int, false, "1", FieldCheck::Positive},
      {"alpha_list", FieldType::String, false, "", FieldCheck::None},
      {"alpha_min", FieldType::Double, false, "", FieldCheck::None},
      {"alpha_max", FieldType::Double, false, "", FieldCheck::None},
      {"alpha_count", FieldType::Int, false, "1", FieldCheck::Positive},
      {"grid_n", FieldType::Int, false, "2001", FieldCheck::Positive},
      {"theta_n", FieldType::Int, false, "1001", FieldCheck::Positive},
      {"workers", FieldType::Int, false, "1", FieldCheck::Positive},
      {"seed", FieldType::Int, false, "", FieldCheck::NonNegative},
  };
  resolved = validate_config(raw, schema, "sweep");

  SweepConfig cfg;
  if (raw.has("d_list")) {
    cfg.d_values = parse_double_list(resolved.get_string("d_list"), "d_list");
  } else if (raw.has("d_min") && raw.has("d_max")) {
    cfg.d_values = linspace(resolved.get_double("d_min"), resolved.get_double("d_max"),
                            static_cast<int>(resolved.get_int("d_count")));
  } else {
    throw DomainError("config: sweep needs d_list or d_min/d_max/d_count");
  }
  if (raw.has("alpha_list")) {
    cfg.alpha_values = parse_double_list(resolved.get_string("alpha_list"), "alpha_list");
  } else if (raw.has("alpha_min") && raw.has("alpha_max")) {
    cfg.alpha_values = linspace(resolved.get_double("alpha_min"),
                                resolved.get_double("alpha_max"),
                                static_cast<int>(resolved.get_int("alpha_count")));
  } else {
    throw DomainError("config: sweep needs alpha_list or alpha_min/alpha_max/alpha_count");
  }
  cfg.grid_n = static_cast<int>(resolved.get_int("grid_n"));
  cfg.theta_n = static_cast<int>(resolved.get_int("theta_n"));
  cfg.workers = static_cast<int>(resolved.get_int("workers"));

  const SweepResult res = run_sweep(cfg);
  write_text_file(out_path(out_dir, "sweep.csv"), res.csv);

  HandlerResult result;
  result.outputs = {"sweep.csv"};
  result.diagnostics = {{"points", static_cast<double>(res.n_points)},
                        {"errors", static_cast<double>(res.n_errors)}};
  return result;
}

// ---------------------------------------------------------------------------

using Handler = HandlerResult (*)(const ConfigMap&, const std::string&, ResolvedConfig&);

int run_subcommand(const std::string& name, Handler handler, const std::string& config_path,
                   const std::string& out_dir, const std::optional<std::int64_t>& seed) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ConfigMap raw = parse_config_text(read_text_file(config_path));
    if (seed) raw.set("seed", std::to_string(*seed));
    fs::create_directories(out_dir);

    ResolvedConfig resolved;
    HandlerResult hr = handler(raw, out_dir, resolved);

    Manifest m;
    m.subcommand = name;
    m.version = kVersion;
    m.config = resolved.entries();
    m.defaulted_keys = resolved.defaulted_keys();
    m.outputs = hr.outputs;
    m.diagnostics = hr.diagnostics;
    m.info = hr.info;
    m.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_text_file(out_path(out_dir, "manifest.json"), render_manifest_json(m));
    return 0;
  } catch (const ParseError& e) {
    std::fputs(render_error_json("parse_error", e.what()).c_str(), stderr);
    return 2;
  } catch (const DomainError& e) {
    std::fputs(render_error_json("domain_error", e.what()).c_str(), stderr);
    return 2;
  } catch (const CflError& e) {
    std::fputs(render_error_json("cfl_error", e.what()).c_str(), stderr);
    return 3;
  } catch (const ChartSingularityError& e) {
    std::fputs(render_error_json("chart_singularity", e.what()).c_str(), stderr);
    return 3;
  } catch (const HyperbolicityError& e) {
    std::fputs(render_error_json("hyperbolicity_violation", e.what()).c_str(), stderr);
    return 3;
  } catch (const SingularSystemError& e) {
    std::fputs(render_error_json("singular_system", e.what()).c_str(), stderr);
    return 3;
  } catch (const DegenerateMeanError& e) {
    std::fputs(render_error_json("degenerate_mean", e.what()).c_str(), stderr);
    return 3;
  } catch (const NumericalError& e) {
    std::fputs(render_error_json("numerical_error", e.what()).c_str(), stderr);
    return 3;
  } catch (const std::exception& e) {
    std::fputs(render_error_json("internal_error", e.what()).c_str(), stderr);
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hydrodynamics of self-alignment with precession: coefficients, "
               "hyperbolicity, macroscopic integrators and the kinetic particle oracle"};
  app.require_subcommand(1);

  struct SubDef {
    const char* name;
    const char* desc;
    Handler handler;
  };
  const std::vector<SubDef> subs = {
      {"coeffs", "hydrodynamic coefficients c1, c2, delta at one parameter point", run_coeffs},
      {"hyperbolicity", "characteristic-root scan over latitude", run_hyperbolicity},
      {"hydro", "first-order hydrodynamic model, 1-D in z", run_hydro},
      {"diffusive", "diffusive-corrected model on periodic 1-D/2-D grids", run_diffusive},
      {"llg", "zero-speed Landau-Lifschitz-Gilbert flow", run_llg},
      {"kinetic", "stochastic particle oracle on the sphere", run_kinetic},
      {"sweep", "coefficient/hyperbolicity table over a (d, alpha) grid", run_sweep_cmd},
  };

  struct SubState {
    std::string config;
    std::string out = ".";
    std::optional<std::int64_t> seed;
    CLI::App* cmd = nullptr;
    Handler handler = nullptr;
    std::string name;
  };
  std::vector<SubState> states(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto* cmd = app.add_subcommand(subs[i].name, subs[i].desc);
    states[i].cmd = cmd;
    states[i].handler = subs[i].handler;
    states[i].name = subs[i].name;
    cmd->add_option("--config", states[i].config, "path to the run config file")->required();
    cmd->add_option("--out", states[i].out, "output directory (default: current)");
    cmd->add_option("--seed", states[i].seed, "override the config seed");
  }

  CLI11_PARSE(app, argc, argv);

  for (const SubState& st : states) {
    if (st.cmd->parsed()) {
      return run_subcommand(st.name, st.handler, st.config, st.out, st.seed);
    }
  }
  return 1;
}
