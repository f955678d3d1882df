#include "sohp/manifest.hpp"

#include <json.hpp>

namespace sohp {

std::string render_manifest_json(const Manifest& m) {
  nlohmann::ordered_json j;
  j["subcommand"] = m.subcommand;
  j["version"] = m.version;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.config) config[k] = v;
  j["config"] = config;
  j["defaulted_keys"] = m.defaulted_keys;
  j["outputs"] = m.outputs;
  nlohmann::ordered_json diag = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.diagnostics) diag[k] = v;
  j["diagnostics"] = diag;
  nlohmann::ordered_json info = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.info) info[k] = v;
  j["info"] = info;
  j["wall_clock_s"] = m.wall_clock_s;
  return j.dump(2) + "\n";
}

std::string render_error_json(const std::string& type, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  return j.dump() + "\n";
}

}  // namespace sohp
