#include "sohp/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "sohp/errors.hpp"

namespace sohp {

namespace {

bool valid_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

bool ConfigMap::has(const std::string& key) const { return find(key) != nullptr; }

const std::string* ConfigMap::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries.emplace_back(key, value);
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap map;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    std::string body = (hash == std::string::npos) ? line : line.substr(0, hash);
    const std::string stripped = trim(body);
    if (stripped.empty()) continue;

    if (stripped.front() == '[') {
      if (stripped.back() != ']' || stripped.size() < 3) {
        throw ParseError("unterminated section header", line_no, 1);
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (section.empty()) throw ParseError("empty section name", line_no, 1);
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line_no, 1);
    }
    std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no, 1);
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (!valid_key_char(key[i])) {
        throw ParseError("invalid character in key '" + key + "'", line_no,
                         static_cast<int>(body.find(key) + i + 1));
      }
    }
    if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no,
                                        static_cast<int>(eq + 2));
    if (!section.empty()) key = section + "." + key;
    if (map.has(key)) throw ParseError("duplicate key '" + key + "'", line_no, 1);
    map.entries.emplace_back(key, value);
  }
  return map;
}

std::string serialize_config(const ConfigMap& map) {
  std::vector<std::pair<std::string, std::string>> sorted = map.entries;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& [k, v] : sorted) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

const std::string& ResolvedConfig::raw(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  throw DomainError("config: key '" + key + "' not in resolved configuration");
}

double ResolvedConfig::get_double(const std::string& key) const {
  const std::string& s = raw(key);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw DomainError("config: key '" + key + "' = '" + s + "' is not a finite number");
  }
  return v;
}

std::int64_t ResolvedConfig::get_int(const std::string& key) const {
  const std::string& s = raw(key);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw DomainError("config: key '" + key + "' = '" + s + "' is not an integer");
  }
  return v;
}

bool ResolvedConfig::get_bool(const std::string& key) const {
  const std::string& s = raw(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw DomainError("config: key '" + key + "' = '" + s + "' is not a boolean");
}

const std::string& ResolvedConfig::get_string(const std::string& key) const { return raw(key); }

bool ResolvedConfig::was_defaulted(const std::string& key) const {
  return std::find(defaulted_.begin(), defaulted_.end(), key) != defaulted_.end();
}

void ResolvedConfig::set_value(const std::string& key, const std::string& value,
                               bool defaulted) {
  entries_.emplace_back(key, value);
  if (defaulted) defaulted_.push_back(key);
}

ResolvedConfig validate_config(const ConfigMap& raw, const std::vector<FieldSpec>& schema,
                               const std::string& subcommand) {
  for (const auto& [key, value] : raw.entries) {
    (void)value;
    const bool known = std::any_of(schema.begin(), schema.end(),
                                   [&](const FieldSpec& f) { return f.name == key; });
    if (!known) {
      throw DomainError("config: unknown key '" + key + "' for subcommand '" + subcommand + "'");
    }
  }

  ResolvedConfig resolved;
  for (const FieldSpec& field : schema) {
    const std::string* user = raw.find(field.name);
    if (user == nullptr && field.required) {
      throw DomainError("config: missing required key '" + field.name + "' for subcommand '" +
                        subcommand + "'");
    }
    if (user == nullptr && field.default_value.empty()) continue;  // optional, no default
    resolved.set_value(field.name, user ? *user : field.default_value, user == nullptr);

    // type + constraint check (constraint named in the error)
    switch (field.type) {
      case FieldType::Double: {
        const double v = resolved.get_double(field.name);
        if (field.check == FieldCheck::Positive && !(v > 0.0)) {
          throw DomainError("config: constraint violated: " + field.name + " > 0 (got " +
                            std::to_string(v) + ")");
        }
        if (field.check == FieldCheck::NonNegative && !(v >= 0.0)) {
          throw DomainError("config: constraint violated: " + field.name + " >= 0 (got " +
                            std::to_string(v) + ")");
        }
        break;
      }
      case FieldType::Int: {
        const std::int64_t v = resolved.get_int(field.name);
        if (field.check == FieldCheck::Positive && v <= 0) {
          throw DomainError("config: constraint violated: " + field.name + " > 0 (got " +
                            std::to_string(v) + ")");
        }
        if (field.check == FieldCheck::NonNegative && v < 0) {
          throw DomainError("config: constraint violated: " + field.name + " >= 0 (got " +
                            std::to_string(v) + ")");
        }
        break;
      }
      case FieldType::Bool:
        resolved.get_bool(field.name);
        break;
      case FieldType::String:
        break;
    }
  }
  return resolved;
}

}  // namespace sohp
