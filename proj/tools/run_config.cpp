#include "run_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "oamwalk/crystal_registry.hpp"
#include "oamwalk/error.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk::cli {
namespace {

namespace fs = std::filesystem;

const std::set<std::string> kCheckedSections = {"crystal", "pump", "grid", "run",
                                                "sweep",   "fit",  "astig", "output"};

std::vector<std::string> split_list(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<std::string> items;
  std::string item;
  while (in >> item) items.push_back(item);
  return items;
}

bool is_auto(const std::string& text) {
  return text == "auto" || text == "auto-phase-match" || text == "auto-from-dispersion";
}

template <typename T>
void one_of(const std::string& key, const std::string& value, std::initializer_list<T> options) {
  for (const auto& o : options) {
    if (value == o) return;
  }
  std::string allowed;
  for (const auto& o : options) allowed += std::string(allowed.empty() ? "" : ", ") + o;
  throw ConfigError(key + " must be one of {" + allowed + "}, got '" + value + "'");
}

}  // namespace

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "crystal.name",         "crystal.registry",      "crystal.theta_deg",
      "crystal.length_mm",    "crystal.geometry",      "pump.wavelength_nm",
      "pump.waist_um",        "pump.oam",              "pump.walkoff_deg",
      "pump.walkoff_azimuth_deg", "pump.astigmatism_beta", "pump.envelope",
      "grid.n_radial",        "grid.n_azimuthal",      "grid.l_max",
      "grid.window",          "grid.window_scale",     "grid.envelope_floor",
      "run.threads",          "run.pool_width",        "sweep.focusing",
      "sweep.rho_deg",        "fit.orders",            "astig.beta_max",
      "astig.tolerance",      "astig.objective",       "output.directory",
      "output.formats"};
  return keys;
}

RunConfig resolve(const KeyValueConfig& kv) {
  const auto& keys = known_keys();
  for (const auto& [key, value] : kv.entries()) {
    const auto dot = key.find('.');
    const std::string section = dot == std::string::npos ? key : key.substr(0, dot);
    if (kCheckedSections.count(section) &&
        std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

  RunConfig c;
  c.crystal_name = kv.get_string("crystal.name", c.crystal_name);
  c.registry = kv.get_string("crystal.registry", "");
  const std::string theta = kv.get_string("crystal.theta_deg", "auto");
  c.theta_auto = is_auto(theta);
  if (!c.theta_auto) c.theta_deg = parse_double(theta, "crystal.theta_deg");
  c.length_mm = kv.get_double("crystal.length_mm", c.length_mm);
  c.geometry = kv.get_string("crystal.geometry", c.geometry);
  one_of<const char*>("crystal.geometry", c.geometry, {"collinear", "noncollinear"});

  c.wavelength_nm = kv.get_double("pump.wavelength_nm", c.wavelength_nm);
  c.waist_um = kv.get_double("pump.waist_um", c.waist_um);
  c.oam = kv.get_int("pump.oam", c.oam);
  const std::string walkoff = kv.get_string("pump.walkoff_deg", "auto");
  c.walkoff_auto = is_auto(walkoff);
  if (!c.walkoff_auto) c.walkoff_deg = parse_double(walkoff, "pump.walkoff_deg");
  c.walkoff_azimuth_deg = kv.get_double("pump.walkoff_azimuth_deg", c.walkoff_azimuth_deg);
  c.astigmatism_beta = kv.get_double("pump.astigmatism_beta", c.astigmatism_beta);
  c.envelope = kv.get_string("pump.envelope", c.envelope);
  one_of<const char*>("pump.envelope", c.envelope, {"isotropic", "literal"});

  c.n_radial = kv.get_int("grid.n_radial", c.n_radial);
  const std::string n_az = kv.get_string("grid.n_azimuthal", std::to_string(c.n_azimuthal));
  c.n_azimuthal_auto = n_az == "auto";
  if (!c.n_azimuthal_auto) c.n_azimuthal = parse_int(n_az, "grid.n_azimuthal");
  c.l_max = kv.get_int("grid.l_max", c.l_max);
  c.window = kv.get_string("grid.window", c.window);
  one_of<const char*>("grid.window", c.window, {"sinc-lobes", "pump-floor"});
  c.window_scale = kv.get_double("grid.window_scale", c.window_scale);
  c.envelope_floor = kv.get_double("grid.envelope_floor", c.envelope_floor);

  c.threads = kv.get_int("run.threads", c.threads);
  c.pool_width = kv.get_int("run.pool_width", c.pool_width);
  if (c.threads < 1 || c.pool_width < 1) throw ConfigError("thread counts must be >= 1");

  if (kv.contains("sweep.focusing")) c.focusing = kv.get_doubles("sweep.focusing");
  if (kv.contains("sweep.rho_deg")) c.rho_deg = kv.get_doubles("sweep.rho_deg");
  if (kv.contains("fit.orders")) {
    c.fit_orders.clear();
    for (const auto& item : split_list(kv.get_string("fit.orders"))) {
      c.fit_orders.push_back(parse_int(item, "fit.orders"));
    }
  }

  c.astig_beta_max = kv.get_double("astig.beta_max", c.astig_beta_max);
  c.astig_tolerance = kv.get_double("astig.tolerance", c.astig_tolerance);
  c.astig_objective = kv.get_string("astig.objective", c.astig_objective);
  parse_objective(c.astig_objective);

  c.output_directory = kv.get_string("output.directory", "");
  if (c.output_directory.empty()) {
    const char* env = std::getenv("OAMWALK_OUTPUT_DIR");
    c.output_directory = env && *env ? env : ".";
  }
  if (kv.contains("output.formats")) c.formats = split_list(kv.get_string("output.formats"));
  for (const auto& f : c.formats) one_of<const char*>("output.formats", f, {"json", "csv"});

  // Physical configuration.
  const auto registry =
      CrystalRegistry::load(c.registry.empty() ? default_registry_path() : fs::path(c.registry));
  if (!registry.contains(c.crystal_name)) {
    throw ConfigError("crystal '" + c.crystal_name + "' is not in the registry");
  }
  c.crystal.sellmeier = registry.get(c.crystal_name);
  c.crystal.geometry = c.geometry == "collinear" ? Geometry::Collinear : Geometry::NonCollinear;
  c.crystal.length_m = mm_to_m(c.length_mm);
  c.pump.lambda_um = nm_to_um(c.wavelength_nm);
  c.pump.waist_m = um_to_m(c.waist_um);
  c.pump.oam = c.oam;
  c.pump.walkoff_azimuth = deg_to_rad(c.walkoff_azimuth_deg);
  c.pump.astig_beta = c.astigmatism_beta;
  c.pump.envelope = c.envelope == "isotropic" ? EnvelopeMode::Isotropic : EnvelopeMode::Literal;

  // Auto values go through degrees so the echoed snapshot reproduces them.
  if (c.theta_auto) {
    if (c.crystal.geometry == Geometry::NonCollinear) {
      throw ConfigError("crystal.theta_deg = auto only solves the collinear cut; give the "
                        "non-collinear angle explicitly");
    }
    c.theta_deg = rad_to_deg(phase_match_angle(c.crystal.sellmeier, c.pump.lambda_um));
  }
  c.crystal.theta = deg_to_rad(c.theta_deg);
  if (c.walkoff_auto) {
    c.walkoff_deg = rad_to_deg(walkoff_angle(c.crystal.sellmeier, c.crystal.theta, c.pump.lambda_um));
  }
  c.pump.walkoff_rho = deg_to_rad(c.walkoff_deg);
  validate(c.crystal);
  validate(c.pump);

  c.pipeline.resolution.n_radial = c.n_radial;
  c.pipeline.resolution.window =
      c.window == "sinc-lobes" ? WindowPolicy::SincLobes : WindowPolicy::PumpFloor;
  c.pipeline.resolution.window_scale = c.window_scale;
  if (c.n_azimuthal_auto) {
    c.n_azimuthal = suggested_azimuthal_samples(c.crystal, c.pump, c.pipeline.resolution.window,
                                                c.window_scale);
  }
  c.pipeline.resolution.n_azimuthal = c.n_azimuthal;
  c.pipeline.l_max = c.l_max;
  c.pipeline.threads = c.threads;
  c.pipeline.pool_width = c.pool_width;
  c.pipeline.envelope_floor = c.envelope_floor;
  return c;
}

nlohmann::json snapshot(const RunConfig& c) {
  nlohmann::json crystal = {{"name", c.crystal_name},
                            {"theta_deg", c.theta_deg},
                            {"length_mm", c.length_mm},
                            {"geometry", c.geometry}};
  if (!c.registry.empty()) crystal["registry"] = c.registry;
  std::string formats;
  for (const auto& f : c.formats) formats += (formats.empty() ? "" : ",") + f;
  return {{"crystal", crystal},
          {"pump",
           {{"wavelength_nm", c.wavelength_nm},
            {"waist_um", c.waist_um},
            {"oam", c.oam},
            {"walkoff_deg", c.walkoff_deg},
            {"walkoff_azimuth_deg", c.walkoff_azimuth_deg},
            {"astigmatism_beta", c.astigmatism_beta},
            {"envelope", c.envelope}}},
          {"grid",
           {{"n_radial", c.n_radial},
            {"n_azimuthal", c.n_azimuthal},
            {"l_max", c.l_max},
            {"window", c.window},
            {"window_scale", c.window_scale},
            {"envelope_floor", c.envelope_floor}}},
          {"run", {{"threads", c.threads}, {"pool_width", c.pool_width}}},
          {"sweep", {{"focusing", c.focusing}, {"rho_deg", c.rho_deg}}},
          {"fit", {{"orders", c.fit_orders}}},
          {"astig",
           {{"beta_max", c.astig_beta_max},
            {"tolerance", c.astig_tolerance},
            {"objective", c.astig_objective}}},
          {"output", {{"directory", c.output_directory}, {"formats", formats}}}};
}

}  // namespace oamwalk::cli
