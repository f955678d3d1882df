#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sohp {

/// Flat key/value view of a config file, in insertion order. Section headers
/// `[name]` prefix the keys that follow as `name.key`.
struct ConfigMap {
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const;
  const std::string* find(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
};

/// Parse the `key = value` / `[section]` grammar. `#` starts a comment.
/// Duplicate keys, malformed lines and bad key characters raise ParseError
/// with line/column information.
ConfigMap parse_config_text(const std::string& text);

/// Canonical serialization (sorted keys, one `key = value` per line).
/// parse(serialize(parse(text))) compares equal to parse(text).
std::string serialize_config(const ConfigMap& map);

enum class FieldType { Double, Int, Bool, String };
enum class FieldCheck { None, Positive, NonNegative };

struct FieldSpec {
  std::string name;
  FieldType type = FieldType::Double;
  bool required = false;
  std::string default_value;  // ignored when required
  FieldCheck check = FieldCheck::None;
};

/// Validated configuration: every schema key resolved (user value or
/// default), every user key known. Typed getters re-parse on demand.
class ResolvedConfig {
public:
  ResolvedConfig() = default;

  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  bool was_defaulted(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  const std::vector<std::string>& defaulted_keys() const { return defaulted_; }

  void set_value(const std::string& key, const std::string& value, bool defaulted);

private:
  const std::string& raw(const std::string& key) const;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::string> defaulted_;
};

/// Strict validation: unknown keys are fatal, required keys must be present,
/// values must parse as their declared type and satisfy the declared check
/// (the violated constraint is named in the error).
ResolvedConfig validate_config(const ConfigMap& raw, const std::vector<FieldSpec>& schema,
                               const std::string& subcommand);

/// Subcommand-scoped run description.
struct RunConfig {
  std::string subcommand;
  ResolvedConfig parameters;
  std::string output_dir = ".";
  std::optional<std::int64_t> seed;
};

}  // namespace sohp
