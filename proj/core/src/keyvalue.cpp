#include "oamwalk/keyvalue.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "oamwalk/error.hpp"

namespace oamwalk {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::map<std::string, std::string>& out) {
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    // nlohmann emits the shortest text that round-trips the double.
    return v.dump();
  };
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (node.is_array()) {
    std::string joined;
    for (const auto& v : node) {
      if (v.is_structured()) continue;
      if (!joined.empty()) joined += ",";
      joined += scalar(v);
    }
    out[prefix] = joined;
  } else if (!node.is_null()) {
    out[prefix] = scalar(node);
  }
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw ConfigError("expected a number for " + what + ", got '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  int value = 0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw ConfigError("expected an integer for " + what + ", got '" + text + "'");
  }
  return value;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::string item;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  while (in >> item) values.push_back(parse_double(item, what));
  return values;
}

KeyValueConfig KeyValueConfig::parse_ini(std::istream& in, const std::string& origin) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  KeyValueConfig cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.entries_[name] = trim(node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) {
      cfg.entries_[name + "." + key] = trim(leaf.data());
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_ini_text(const std::string& text) {
  std::istringstream in(text);
  return parse_ini(in);
}

KeyValueConfig KeyValueConfig::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("JSON configuration must be an object");
  KeyValueConfig cfg;
  flatten(doc, "", cfg.entries_);
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    return from_json(doc);
  }
  std::istringstream stream(text);
  return parse_ini(stream, path.string());
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  entries_[key] = trim(value);
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
  }
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void KeyValueConfig::merge(const KeyValueConfig& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

bool KeyValueConfig::contains(const std::string& key) const { return entries_.count(key) != 0; }

std::optional<std::string> KeyValueConfig::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto v = find(key);
  if (!v) throw ConfigError("missing required key " + key);
  return *v;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return find(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_double(get_string(key), key);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = find(key);
  return v ? parse_double(*v, key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
  return parse_int(get_string(key), key);
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  auto v = find(key);
  return v ? parse_int(*v, key) : fallback;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  return parse_double_list(get_string(key), key);
}

std::vector<std::string> KeyValueConfig::sections() const {
  std::set<std::string> names;
  for (const auto& [key, value] : entries_) {
    const auto dot = key.find('.');
    if (dot != std::string::npos) names.insert(key.substr(0, dot));
  }
  return {names.begin(), names.end()};
}

}  // namespace oamwalk
