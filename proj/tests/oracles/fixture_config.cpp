#include "fixture_config.hpp"

#include <cstdio>

#include "oamwalk/units.hpp"

namespace oamwalk::oracle {

nlohmann::json case_to_json(const FixtureCase& c) {
  return {{"crystal", c.crystal.sellmeier.name},
          {"theta_deg", rad_to_deg(c.crystal.theta)},
          {"length_mm", c.crystal.length_m * 1e3},
          {"geometry", c.crystal.geometry == Geometry::Collinear ? "collinear" : "noncollinear"},
          {"wavelength_um", c.pump.lambda_um},
          {"waist_um", c.pump.waist_m * 1e6},
          {"oam", c.pump.oam},
          {"walkoff_deg", rad_to_deg(c.pump.walkoff_rho)},
          {"walkoff_azimuth_deg", rad_to_deg(c.pump.walkoff_azimuth)},
          {"astigmatism_beta", c.pump.astig_beta},
          {"n_radial", c.resolution.n_radial},
          {"n_azimuthal", c.resolution.n_azimuthal},
          {"l_max", c.l_max}};
}

FixtureCase case_from_json(const nlohmann::json& j, const CrystalRegistry& registry) {
  FixtureCase c;
  c.crystal.sellmeier = registry.get(j.at("crystal").get<std::string>());
  c.crystal.theta = deg_to_rad(j.at("theta_deg").get<double>());
  c.crystal.length_m = mm_to_m(j.at("length_mm").get<double>());
  c.crystal.geometry =
      j.at("geometry").get<std::string>() == "collinear" ? Geometry::Collinear : Geometry::NonCollinear;
  c.pump.lambda_um = j.at("wavelength_um").get<double>();
  c.pump.waist_m = um_to_m(j.at("waist_um").get<double>());
  c.pump.oam = j.at("oam").get<int>();
  c.pump.walkoff_rho = deg_to_rad(j.at("walkoff_deg").get<double>());
  c.pump.walkoff_azimuth = deg_to_rad(j.at("walkoff_azimuth_deg").get<double>());
  c.pump.astig_beta = j.at("astigmatism_beta").get<double>();
  c.resolution.n_radial = j.at("n_radial").get<int>();
  c.resolution.n_azimuthal = j.at("n_azimuthal").get<int>();
  c.l_max = j.at("l_max").get<int>();
  return c;
}

std::uint64_t config_hash(const nlohmann::json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oamwalk::oracle
