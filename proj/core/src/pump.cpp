#include "oamwalk/pump.hpp"

#include <cmath>

#include "oamwalk/error.hpp"

namespace oamwalk {

void validate(const PumpConfig& pump) {
  if (!(pump.waist_m > 0.0)) throw DomainError("pump waist must be positive");
  if (std::abs(pump.oam) > kMaxPumpOam) throw DomainError("pump OAM |l_p| must not exceed 8");
  if (!(std::abs(pump.walkoff_rho) < kMaxWalkoff)) {
    throw DomainError("walk-off angle must satisfy |rho| < 0.2 rad");
  }
  if (!(pump.lambda_um > 0.0)) throw DomainError("pump wavelength must be positive");
}

std::complex<double> pump_envelope(const PumpConfig& pump, double qpx, double qpy) {
  const double w2 = pump.waist_m * pump.waist_m;
  const double q2 = qpx * qpx + qpy * qpy;
  const double gauss_arg =
      pump.envelope == EnvelopeMode::Isotropic ? q2 : (qpx + qpy) * (qpx + qpy);
  double magnitude = std::exp(-0.25 * w2 * gauss_arg);
  double phase = 0.0;
  if (pump.oam != 0) {
    if (q2 == 0.0) return {0.0, 0.0};
    magnitude *= std::pow(pump.waist_m * std::sqrt(0.5 * q2), std::abs(pump.oam));
    phase += pump.oam * std::atan2(qpy, qpx);
  }
  if (pump.astig_beta != 0.0) {
    phase += 0.25 * pump.astig_beta * w2 * (qpx * qpx - qpy * qpy);
  }
  if (phase == 0.0) return {magnitude, 0.0};
  return std::polar(magnitude, phase);
}

}  // namespace oamwalk
