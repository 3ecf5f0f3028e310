#include "oamwalk/dispersion.hpp"

#include <cmath>
#include <string>

#include "oamwalk/error.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk {
namespace {

const SellmeierTerms& terms(const SellmeierModel& model, Polarization pol) {
  return pol == Polarization::Ordinary ? model.ordinary : model.extraordinary;
}

constexpr double kBracketLo = 0.1 * kPi / 180.0;
constexpr double kBracketHi = 89.9 * kPi / 180.0;
constexpr int kMaxBisections = 200;

}  // namespace

void validate(const CrystalConfig& crystal) {
  if (!(crystal.theta > 0.0 && crystal.theta < kPi / 2.0)) {
    throw DomainError("crystal cut angle must lie strictly between 0 and 90 degrees");
  }
  if (!(crystal.length_m > 0.0)) {
    throw DomainError("crystal length must be positive");
  }
}

double refractive_index(const SellmeierModel& model, Polarization pol, double lambda_um) {
  const auto& t = terms(model, pol);
  const double l2 = lambda_um * lambda_um;
  const double denom = l2 - t.c;
  // Pole first: a wavelength sitting on the resonance is a model defect even
  // when it also falls outside the declared range.
  if (std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(t.c))) {
    throw ModelError("Sellmeier pole at lambda = " + std::to_string(lambda_um) + " um in model " +
                     model.name);
  }
  if (!(lambda_um >= model.lambda_min_um && lambda_um <= model.lambda_max_um)) {
    throw DomainError("wavelength " + std::to_string(lambda_um) + " um outside validity range of " +
                      model.name);
  }
  const double n2 = t.a + t.b / denom - t.d * l2;
  if (!(n2 > 0.0)) {
    throw ModelError("negative Sellmeier radicand at lambda = " + std::to_string(lambda_um) + " um");
  }
  return std::sqrt(n2);
}

double index_e_at_angle(const SellmeierModel& model, double theta, double lambda_um) {
  const double no = refractive_index(model, Polarization::Ordinary, lambda_um);
  const double ne = refractive_index(model, Polarization::Extraordinary, lambda_um);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double index_e_derivative(const SellmeierModel& model, double theta, double lambda_um) {
  const double no = refractive_index(model, Polarization::Ordinary, lambda_um);
  const double ne = refractive_index(model, Polarization::Extraordinary, lambda_um);
  const double n = index_e_at_angle(model, theta, lambda_um);
  return -n * n * n * std::sin(theta) * std::cos(theta) * (1.0 / (ne * ne) - 1.0 / (no * no));
}

double degenerate_mismatch(const SellmeierModel& model, double theta, double lambda_p_um,
                           double q0) {
  const double lambda_s_um = 2.0 * lambda_p_um;
  const double kp = wavenumber(index_e_at_angle(model, theta, lambda_p_um), lambda_p_um);
  const double ks = wavenumber(refractive_index(model, Polarization::Ordinary, lambda_s_um),
                               lambda_s_um);
  if (q0 >= ks) {
    throw DomainError("transverse wavevector exceeds the signal wavenumber (evanescent)");
  }
  // k_s - k_sz written without cancellation.
  const double ksz = ks - q0 * q0 / (ks + std::sqrt(ks * ks - q0 * q0));
  return kp - 2.0 * ksz;
}

double phase_match_angle(const SellmeierModel& model, double lambda_p_um,
                         double signal_transverse_q0) {
  double lo = kBracketLo;
  double hi = kBracketHi;
  double f_lo = degenerate_mismatch(model, lo, lambda_p_um, signal_transverse_q0);
  const double f_hi = degenerate_mismatch(model, hi, lambda_p_um, signal_transverse_q0);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw DomainError("no type-I phase matching for pump wavelength " +
                      std::to_string(lambda_p_um) + " um in model " + model.name);
  }
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = degenerate_mismatch(model, mid, lambda_p_um, signal_transverse_q0);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> phase_matched_ring_radius(const SellmeierModel& model, double theta,
                                                double lambda_p_um) {
  const double lambda_s_um = 2.0 * lambda_p_um;
  const double kp = wavenumber(index_e_at_angle(model, theta, lambda_p_um), lambda_p_um);
  const double ks = wavenumber(refractive_index(model, Polarization::Ordinary, lambda_s_um),
                               lambda_s_um);
  // k_p = 2 sqrt(k_s^2 - q0^2)  =>  q0^2 = (k_s - k_p/2)(k_s + k_p/2)
  const double q0_sq = (ks - 0.5 * kp) * (ks + 0.5 * kp);
  if (!(q0_sq >= 0.0)) return std::nullopt;
  return std::sqrt(q0_sq);
}

double walkoff_angle(const SellmeierModel& model, double theta, double lambda_p_um) {
  const double n = index_e_at_angle(model, theta, lambda_p_um);
  return std::atan(-index_e_derivative(model, theta, lambda_p_um) / n);
}

}  // namespace oamwalk
