#include "oamwalk/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "oamwalk/error.hpp"
#include "oamwalk/quadrature.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk {

double PolarGrid::azimuthal_step() const { return kTwoPi / n_azimuthal; }

PolarGrid make_polar_grid(int n_radial, int n_azimuthal, double q_min, double q_max) {
  if (n_radial < 1) throw DomainError("grid needs at least one radial node");
  if (n_azimuthal < 4 || !std::has_single_bit(static_cast<unsigned>(n_azimuthal))) {
    throw DomainError("azimuthal sample count must be a power of two >= 4");
  }
  if (!(q_min >= 0.0 && q_max > q_min)) throw DomainError("radial window must satisfy 0 <= q_min < q_max");
  auto rule = gauss_legendre(n_radial, q_min, q_max);
  PolarGrid grid;
  grid.n_radial = n_radial;
  grid.n_azimuthal = n_azimuthal;
  grid.q_min = q_min;
  grid.q_max = q_max;
  grid.radial_nodes = std::move(rule.nodes);
  grid.radial_weights = std::move(rule.weights);
  return grid;
}

EmissionWindow emission_window(const CrystalConfig& crystal, const PumpConfig& pump,
                               WindowPolicy policy) {
  validate(crystal);
  validate(pump);
  const double lambda_s_m = um_to_m(2.0 * pump.lambda_um);
  const double pump_width = 6.0 / pump.waist_m;
  const double sinc_width = 3.0 * std::sqrt(4.0 * kPi / (lambda_s_m * crystal.length_m));
  EmissionWindow window;
  window.half_width =
      policy == WindowPolicy::PumpFloor ? std::max(pump_width, sinc_width) : sinc_width;
  if (crystal.geometry == Geometry::Collinear) {
    window.q_max = window.half_width;
    return window;
  }
  const auto ring = phase_matched_ring_radius(crystal.sellmeier, crystal.theta, pump.lambda_um);
  if (!ring || *ring <= 0.0) {
    throw DomainError("non-collinear geometry requested but the cut angle has no emission ring");
  }
  window.ring_radius = *ring;
  window.q_min = std::max(0.0, *ring - window.half_width);
  window.q_max = *ring + window.half_width;
  return window;
}

int suggested_azimuthal_samples(const CrystalConfig& crystal, const PumpConfig& pump,
                                WindowPolicy policy, double window_scale, int min_n, int max_n) {
  const auto window = emission_window(crystal, pump, policy);
  const double q_max = window.ring_radius + window.half_width * window_scale;
  const double want = 4.0 * q_max * pump.waist_m;
  unsigned n = std::bit_ceil(static_cast<unsigned>(std::max(4, min_n)));
  while (n < want && static_cast<int>(n) < max_n) n *= 2;
  return static_cast<int>(n);
}

PolarGrid make_emission_grid(const CrystalConfig& crystal, const PumpConfig& pump,
                             const GridResolution& resolution) {
  if (!(resolution.window_scale > 0.0)) throw DomainError("window scale must be positive");
  auto window = emission_window(crystal, pump, resolution.window);
  if (resolution.window_scale != 1.0) {
    const double h = window.half_width * resolution.window_scale;
    window.half_width = h;
    if (crystal.geometry == Geometry::Collinear) {
      window.q_max = h;
    } else {
      window.q_min = std::max(0.0, window.ring_radius - h);
      window.q_max = window.ring_radius + h;
    }
  }
  return make_polar_grid(resolution.n_radial, resolution.n_azimuthal, window.q_min, window.q_max);
}

}  // namespace oamwalk
