#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oamwalk/biphoton.hpp"

namespace oamwalk {

// Signal-arm far-field intensity on the signal polar grid, normalized to unit
// peak. The centroid is the intensity-weighted mean transverse wavevector,
// reported both in 1/m and in units of 1/w_p.
struct IntensityMap {
  PolarGrid grid;
  std::vector<double> values;  // row-major (radial a, azimuth j)
  double raw_peak = 0.0;       // peak before normalization
  double peak_q = 0.0;
  double peak_phi = 0.0;
  double centroid_x = 0.0;     // 1/m
  double centroid_y = 0.0;
  double waist_m = 0.0;

  double at(int a, int j) const {
    return values[static_cast<std::size_t>(a) * grid.n_azimuthal + j];
  }
  double centroid_x_normalized() const { return centroid_x * waist_m; }
  double centroid_y_normalized() const { return centroid_y * waist_m; }
  // Azimuthally averaged profile, one value per radial node.
  std::vector<double> radial_profile() const;
};

// I(q_s, phi_s) = sum over the idler grid of w q |Phi(q_s, phi_s, q, phi)|^2.
IntensityMap signal_intensity(const CrystalConfig& crystal, const PumpConfig& pump,
                              const PolarGrid& grid, const KernelOptions& options = {});

nlohmann::json intensity_metadata(const IntensityMap& map);
// "q_s,phi_s,intensity" rows, 17 significant digits.
std::string intensity_to_csv(const IntensityMap& map);

}  // namespace oamwalk
