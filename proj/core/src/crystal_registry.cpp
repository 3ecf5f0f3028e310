#include "oamwalk/crystal_registry.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oamwalk/error.hpp"
#include "oamwalk/keyvalue.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk {
namespace {

SellmeierTerms parse_terms(const KeyValueConfig& kv, const std::string& key) {
  const auto values = kv.get_doubles(key);
  if (values.size() != 4) {
    throw ConfigError(key + " needs four coefficients A B C D, got " +
                      std::to_string(values.size()));
  }
  return {values[0], values[1], values[2], values[3]};
}

void check_model(const SellmeierModel& model) {
  // n^2 > 1 and n_o > n_e across the declared range (negative uniaxial).
  constexpr int kSamples = 101;
  for (int i = 0; i < kSamples; ++i) {
    const double lambda =
        model.lambda_min_um + (model.lambda_max_um - model.lambda_min_um) * i / (kSamples - 1);
    const double no = refractive_index(model, Polarization::Ordinary, lambda);
    const double ne = refractive_index(model, Polarization::Extraordinary, lambda);
    if (!(no > 1.0 && ne > 1.0)) {
      throw ModelError(model.name + ": index below unity at " + std::to_string(lambda) + " um");
    }
    if (!(no > ne)) {
      throw ModelError(model.name + ": not negative uniaxial at " + std::to_string(lambda) +
                       " um (type-I needs n_o > n_e)");
    }
  }
}

}  // namespace

CrystalRegistry CrystalRegistry::parse(std::istream& in, const std::string& origin) {
  const auto kv = KeyValueConfig::parse_ini(in, origin);
  CrystalRegistry registry;
  for (const auto& section : kv.sections()) {
    SellmeierModel model;
    model.name = section;
    model.ordinary = parse_terms(kv, section + ".ordinary");
    model.extraordinary = parse_terms(kv, section + ".extraordinary");
    model.lambda_min_um = kv.get_double(section + ".lambda_min_um", 0.2);
    model.lambda_max_um = kv.get_double(section + ".lambda_max_um", 1.2);
    if (!(model.lambda_min_um > 0.0 && model.lambda_max_um > model.lambda_min_um)) {
      throw ConfigError(section + ": invalid validity range");
    }
    check_model(model);

    if (kv.contains(section + ".check_pump_nm")) {
      const double pump_um = nm_to_um(kv.get_double(section + ".check_pump_nm"));
      const double expected = kv.get_double(section + ".check_theta_deg");
      const double tol = kv.get_double(section + ".check_tolerance_deg", 0.05);
      const double got = rad_to_deg(phase_match_angle(model, pump_um));
      if (std::abs(got - expected) > tol) {
        std::ostringstream msg;
        msg.precision(6);
        msg << section << ": collinear phase-matching angle " << std::fixed << got
            << " deg misses the registry check " << expected << " +/- " << tol << " deg";
        throw ModelError(msg.str());
      }
    }
    registry.models_.emplace(section, std::move(model));
  }
  if (registry.models_.empty()) throw ConfigError(origin + ": no crystal entries");
  return registry;
}

CrystalRegistry CrystalRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open crystal registry " + path.string());
  return parse(in, path.string());
}

const SellmeierModel& CrystalRegistry::get(std::string_view name) const {
  const auto it = models_.find(name);
  if (it == models_.end()) {
    throw ConfigError("crystal '" + std::string(name) + "' not in registry");
  }
  return it->second;
}

bool CrystalRegistry::contains(std::string_view name) const {
  return models_.find(name) != models_.end();
}

std::vector<std::string> CrystalRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, model] : models_) out.push_back(name);
  return out;
}

std::filesystem::path default_registry_path() {
  if (const char* env = std::getenv("OAMWALK_CRYSTAL_REGISTRY"); env && *env) return env;
  const std::filesystem::path source = OAMWALK_SOURCE_REGISTRY;
  if (std::filesystem::exists(source)) return source;
  return OAMWALK_INSTALL_REGISTRY;
}

}  // namespace oamwalk
