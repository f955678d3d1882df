#pragma once

#include <string>
#include <vector>

namespace sohp {

/// Everything needed to bit-reproduce a run with the same build: the fully
/// resolved config, which keys came from defaults, and the declared outputs.
struct Manifest {
  std::string subcommand;
  std::string version;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> defaulted_keys;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::pair<std::string, std::string>> info;
  double wall_clock_s = 0.0;
};

std::string render_manifest_json(const Manifest& m);

/// {"error": {"type": ..., "message": ...}} on one line, for tooling.
std::string render_error_json(const std::string& type, const std::string& message);

}  // namespace sohp
