#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "oamwalk/dispersion.hpp"
#include "oamwalk/grid.hpp"
#include "oamwalk/pump.hpp"

namespace oamwalk {

// sin(x)/x with sinc(0) = 1.
double sinc(double x);

// Degenerate type-I constants: extraordinary pump, ordinary daughters at 2 lambda_p.
// Evaluates the phase mismatch and the two-photon amplitude at arbitrary
// transverse wavevectors; the kernel and the far-field map share it.
class TwoPhotonModel {
 public:
  TwoPhotonModel(const CrystalConfig& crystal, const PumpConfig& pump);

  double k_pump() const { return k_pump_; }
  double k_signal() const { return k_signal_; }
  double k_idler() const { return k_idler_; }
  double length() const { return length_; }
  const PumpConfig& pump() const { return pump_; }

  // k_pz - k_sz - k_iz with |q_s + q_i|^2 = q_pump_sq. nullopt when any wave
  // is evanescent.
  std::optional<double> base_mismatch(double q_s, double q_i, double q_pump_sq) const;
  // (Q . u) tan(rho), u the unit vector of the walk-off plane.
  double walkoff_term(double qpx, double qpy) const {
    return (qpx * walk_cos_ + qpy * walk_sin_) * tan_rho_;
  }

  std::optional<double> delta_k(double q_s, double phi_s, double q_i, double phi_i) const;
  std::complex<double> amplitude(double q_s, double phi_s, double q_i, double phi_i) const;

 private:
  PumpConfig pump_;
  double k_pump_ = 0.0;
  double k_signal_ = 0.0;
  double k_idler_ = 0.0;
  double k_offset_ = 0.0;  // k_p - k_s - k_i
  double length_ = 0.0;
  double tan_rho_ = 0.0;
  double walk_cos_ = 1.0;
  double walk_sin_ = 0.0;
};

std::optional<double> delta_k(const CrystalConfig& crystal, const PumpConfig& pump, double q_s,
                              double phi_s, double q_i, double phi_i);

// Phi = E_p(q_s + q_i) sinc(dk L / 2) exp(i dk L / 2); zero where evanescent.
std::complex<double> two_photon_amplitude(const CrystalConfig& crystal, const PumpConfig& pump,
                                          double q_s, double phi_s, double q_i, double phi_i);

struct BiphotonField {
  PolarGrid grid;
  // Row-major W(phi_s[j_s], phi_i[j_i]).
  std::vector<std::complex<double>> kernel;
  double norm = 0.0;  // sum |W|^2 (2 pi / N)^2

  int size() const { return grid.n_azimuthal; }
  const std::complex<double>& at(int j_s, int j_i) const {
    return kernel[static_cast<std::size_t>(j_s) * grid.n_azimuthal + j_i];
  }
};

struct KernelOptions {
  int threads = 1;
  // Pump-envelope contributions below this fraction of the envelope peak are
  // skipped. The skip set depends only on (q_a, q_b, phi_s - phi_i).
  double envelope_floor = 1e-18;
};

// W(phi_s, phi_i) = sum_ab w_a w_b q_a q_b Phi(q_a, phi_s, q_b, phi_i).
// Every output cell is reduced in the same (a, b) order whatever the thread
// count, so results are bit-identical across thread counts.
BiphotonField azimuthal_kernel(const CrystalConfig& crystal, const PumpConfig& pump,
                               const PolarGrid& grid, const KernelOptions& options = {});

// Largest value of w_p^2 |Q|^2 / 4 that can still carry envelope magnitude
// above `floor` relative to its peak (infinite for the literal envelope).
double envelope_exponent_cutoff(const PumpConfig& pump, double floor);

// Symmetric trig tables for the uniform azimuthal grid: cos[N-j] == cos[j]
// and sin[N-j] == -sin[j] bit for bit.
struct AzimuthTables {
  std::vector<double> cos;
  std::vector<double> sin;
};
AzimuthTables azimuth_tables(int n_azimuthal);

}  // namespace oamwalk
