#include "oamwalk/farfield.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "amplitude_sweep.hpp"
#include "oamwalk/error.hpp"
#include "oamwalk/oam.hpp"
#include "oamwalk/serialize.hpp"

namespace oamwalk {

std::vector<double> IntensityMap::radial_profile() const {
  std::vector<double> profile(grid.n_radial, 0.0);
  for (int a = 0; a < grid.n_radial; ++a) {
    for (int j = 0; j < grid.n_azimuthal; ++j) profile[a] += at(a, j);
    profile[a] /= grid.n_azimuthal;
  }
  return profile;
}

IntensityMap signal_intensity(const CrystalConfig& crystal, const PumpConfig& pump,
                              const PolarGrid& grid, const KernelOptions& options) {
  const TwoPhotonModel model(crystal, pump);
  const int n = grid.n_azimuthal;
  const int nr = grid.n_radial;
  std::vector<double> wq(nr);
  for (int b = 0; b < nr; ++b) wq[b] = grid.radial_weights[b] * grid.radial_nodes[b];

  IntensityMap map;
  map.grid = grid;
  map.waist_m = pump.waist_m;
  map.values.assign(static_cast<std::size_t>(nr) * n, 0.0);

  detail::sweep_amplitudes(model, grid, options,
                           [&](int a, int b, int js, int, std::complex<double> phi) {
                             map.values[static_cast<std::size_t>(a) * n + js] +=
                                 wq[b] * std::norm(phi);
                           });

  double peak = 0.0;
  int peak_index = 0;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    if (map.values[i] > peak) {
      peak = map.values[i];
      peak_index = static_cast<int>(i);
    }
  }
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw DomainError("signal far-field intensity vanishes on the grid");
  }
  map.raw_peak = peak;
  map.peak_q = grid.radial_nodes[peak_index / n];
  map.peak_phi = grid.phi(peak_index % n);

  const auto trig = azimuth_tables(n);
  double mass = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (int a = 0; a < nr; ++a) {
    const double area = grid.radial_weights[a] * grid.radial_nodes[a];
    for (int j = 0; j < n; ++j) {
      auto& v = map.values[static_cast<std::size_t>(a) * n + j];
      v /= peak;
      const double m = area * v;
      mass += m;
      mx += m * grid.radial_nodes[a] * trig.cos[j];
      my += m * grid.radial_nodes[a] * trig.sin[j];
    }
  }
  map.centroid_x = mx / mass;
  map.centroid_y = my / mass;
  return map;
}

nlohmann::json intensity_metadata(const IntensityMap& map) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["normalization"] = "peak";
  j["peak"] = {{"raw_value", map.raw_peak}, {"q_per_m", map.peak_q}, {"phi_rad", map.peak_phi}};
  j["centroid"] = {{"x_per_m", map.centroid_x},
                   {"y_per_m", map.centroid_y},
                   {"x_times_waist", map.centroid_x_normalized()},
                   {"y_times_waist", map.centroid_y_normalized()}};
  j["grid"] = {{"n_radial", map.grid.n_radial},
               {"n_azimuthal", map.grid.n_azimuthal},
               {"q_min_per_m", map.grid.q_min},
               {"q_max_per_m", map.grid.q_max},
               {"radial_rule", "gauss-legendre"}};
  return j;
}

std::string intensity_to_csv(const IntensityMap& map) {
  std::ostringstream out;
  out << "q_s,phi_s,intensity\n";
  for (int a = 0; a < map.grid.n_radial; ++a) {
    for (int j = 0; j < map.grid.n_azimuthal; ++j) {
      out << format_double(map.grid.radial_nodes[a]) << ',' << format_double(map.grid.phi(j))
          << ',' << format_double(map.at(a, j)) << '\n';
    }
  }
  return out.str();
}

}  // namespace oamwalk
