#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace oamwalk {

// Flat "section.key" -> text store shared by run configs and the crystal
// registry. Sectioned INI text and nested JSON objects both flatten into it.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_ini(std::istream& in, const std::string& origin = "<ini>");
  static KeyValueConfig parse_ini_text(const std::string& text);
  // Scalars and arrays of scalars under nested objects; arrays join with ','.
  static KeyValueConfig from_json(const nlohmann::json& doc);
  // JSON when the first non-blank character is '{', INI otherwise.
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  // Applies "key=value"; throws ConfigError when '=' is missing.
  void apply_override(const std::string& assignment);
  void merge(const KeyValueConfig& other);

  bool contains(const std::string& key) const;
  std::optional<std::string> find(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  // Section names present, in sorted order.
  std::vector<std::string> sections() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

double parse_double(const std::string& text, const std::string& what);
int parse_int(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);

}  // namespace oamwalk
