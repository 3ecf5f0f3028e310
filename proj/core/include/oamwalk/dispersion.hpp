#pragma once

#include <optional>
#include <string>

namespace oamwalk {

enum class Polarization { Ordinary, Extraordinary };

// n^2 = A + B / (lambda^2 - C) - D lambda^2, lambda in micrometers.
struct SellmeierTerms {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

struct SellmeierModel {
  std::string name;
  SellmeierTerms ordinary;
  SellmeierTerms extraordinary;
  double lambda_min_um = 0.2;
  double lambda_max_um = 1.2;
};

enum class Geometry { Collinear, NonCollinear };

struct CrystalConfig {
  SellmeierModel sellmeier;
  double theta = 0.0;     // optic axis to pump propagation, radians
  double length_m = 0.0;  // crystal length L
  Geometry geometry = Geometry::Collinear;
};

// Throws DomainError unless 0 < theta < pi/2 and length > 0.
void validate(const CrystalConfig& crystal);

double refractive_index(const SellmeierModel& model, Polarization pol, double lambda_um);

// Extraordinary index along a direction at `theta` from the optic axis:
// 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2.
double index_e_at_angle(const SellmeierModel& model, double theta, double lambda_um);

// d n_e(theta) / d theta, closed form of the index ellipse.
double index_e_derivative(const SellmeierModel& model, double theta, double lambda_um);

// Longitudinal mismatch k_p(theta) - 2 k_z(q0) of a degenerate type-I pair
// emitted symmetrically at transverse wavevector magnitude q0 (1/m).
double degenerate_mismatch(const SellmeierModel& model, double theta, double lambda_p_um,
                           double q0);

// Cut angle at which the degenerate pair is phase matched at ring radius q0
// (q0 = 0 is collinear). Bisection over [0.1 deg, 89.9 deg].
double phase_match_angle(const SellmeierModel& model, double lambda_p_um,
                         double signal_transverse_q0 = 0.0);

// Inverse problem: emission ring radius at a fixed cut angle. Returns nullopt
// when the geometry cannot phase match non-collinearly (q0^2 < 0).
std::optional<double> phase_matched_ring_radius(const SellmeierModel& model, double theta,
                                                double lambda_p_um);

// Poynting-vector walk-off of the extraordinary pump, from
// n_e tan(rho) = -d n_e / d theta. Positive for negative uniaxial crystals.
double walkoff_angle(const SellmeierModel& model, double theta, double lambda_p_um);

}  // namespace oamwalk
