#pragma once

#include <complex>

namespace oamwalk {

enum class EnvelopeMode {
  Isotropic,  // exp(-w^2 (qx^2 + qy^2) / 4)
  Literal,    // exp(-w^2 (qx + qy)^2 / 4), kept for comparison runs
};

struct PumpConfig {
  double lambda_um = 0.355;
  double waist_m = 200e-6;
  int oam = 0;                  // Laguerre-Gauss azimuthal index, radial order 0
  double walkoff_rho = 0.0;     // radians
  double walkoff_azimuth = 0.0; // direction of the walk-off plane, radians from +x
  double astig_beta = 0.0;      // dimensionless, 0 disables
  EnvelopeMode envelope = EnvelopeMode::Isotropic;
};

inline constexpr int kMaxPumpOam = 8;
inline constexpr double kMaxWalkoff = 0.2;

// Throws DomainError when waist <= 0, |oam| > 8 or |rho| >= 0.2 rad.
void validate(const PumpConfig& pump);

// Transverse angular spectrum of the pump at (qpx, qpy) in 1/m. The
// walk-off phase is not part of the envelope; it enters through the phase
// mismatch.
std::complex<double> pump_envelope(const PumpConfig& pump, double qpx, double qpy);

}  // namespace oamwalk
