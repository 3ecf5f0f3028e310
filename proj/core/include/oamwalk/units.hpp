#pragma once

#include <numbers>

namespace oamwalk {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

constexpr double um_to_m(double um) { return um * 1e-6; }
constexpr double nm_to_um(double nm) { return nm * 1e-3; }
constexpr double mm_to_m(double mm) { return mm * 1e-3; }

// Vacuum wavenumber scaled by index: 2 pi n / lambda, lambda in micrometers,
// result in inverse meters.
constexpr double wavenumber(double index, double lambda_um) {
  return kTwoPi * index / um_to_m(lambda_um);
}

}  // namespace oamwalk
