#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oamwalk/analysis.hpp"
#include "oamwalk/keyvalue.hpp"

namespace oamwalk::cli {

// Fully resolved run configuration. Interface values (degrees, mm, nm, um)
// are kept next to the SI values derived from them so a snapshot echoes
// exactly what was used.
struct RunConfig {
  std::string crystal_name = "BBO";
  std::string registry;  // empty: default lookup
  double theta_deg = 0.0;
  bool theta_auto = false;
  double length_mm = 3.0;
  std::string geometry = "collinear";

  double wavelength_nm = 355.0;
  double waist_um = 200.0;
  int oam = 0;
  double walkoff_deg = 0.0;
  bool walkoff_auto = false;
  double walkoff_azimuth_deg = 0.0;
  double astigmatism_beta = 0.0;
  std::string envelope = "isotropic";

  int n_radial = 96;
  int n_azimuthal = 128;
  bool n_azimuthal_auto = false;
  int l_max = 10;
  std::string window = "sinc-lobes";
  double window_scale = 1.0;
  double envelope_floor = 1e-18;

  int threads = 1;
  int pool_width = 1;

  std::vector<double> focusing = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> rho_deg = kDefaultScalingRhoDeg;
  std::vector<int> fit_orders = {1, 2, 3};

  double astig_beta_max = 10.0;
  double astig_tolerance = 1e-3;
  std::string astig_objective = "odd-sidebands";

  std::string output_directory;
  std::vector<std::string> formats = {"json", "csv"};

  // Derived, filled by resolve().
  CrystalConfig crystal;
  PumpConfig pump;
  PipelineOptions pipeline;

  bool wants(const std::string& format) const;
};

// Keys recognized under each section. Unknown keys in these sections are a
// configuration error; other top-level sections (result, command, ...) are
// ignored so output snapshots can be fed back.
const std::vector<std::string>& known_keys();

// Reads values, resolves "auto" fields and derives the physical configs.
// Throws ConfigError for malformed text and DomainError/ModelError for
// physically invalid values.
RunConfig resolve(const KeyValueConfig& kv);

// Resolved configuration in the same flat sections the parser reads.
nlohmann::json snapshot(const RunConfig& config);

}  // namespace oamwalk::cli
