#include "oamwalk/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "oamwalk/error.hpp"
#include "oamwalk/units.hpp"
#include "amplitude_sweep.hpp"

namespace oamwalk {
using detail::axial_deficit;
using detail::sinc_phasor;

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

TwoPhotonModel::TwoPhotonModel(const CrystalConfig& crystal, const PumpConfig& pump)
    : pump_(pump) {
  validate(crystal);
  validate(pump);
  const double lambda_s = 2.0 * pump.lambda_um;
  k_pump_ = wavenumber(index_e_at_angle(crystal.sellmeier, crystal.theta, pump.lambda_um),
                       pump.lambda_um);
  k_signal_ = wavenumber(
      refractive_index(crystal.sellmeier, Polarization::Ordinary, lambda_s), lambda_s);
  k_idler_ = k_signal_;
  k_offset_ = k_pump_ - k_signal_ - k_idler_;
  length_ = crystal.length_m;
  tan_rho_ = std::tan(pump.walkoff_rho);
  if (pump.walkoff_azimuth != 0.0) {
    walk_cos_ = std::cos(pump.walkoff_azimuth);
    walk_sin_ = std::sin(pump.walkoff_azimuth);
  }
}

std::optional<double> TwoPhotonModel::base_mismatch(double q_s, double q_i,
                                                    double q_pump_sq) const {
  if (!(q_s < k_signal_ && q_i < k_idler_ && q_pump_sq < k_pump_ * k_pump_)) return std::nullopt;
  const double pump_deficit = q_pump_sq / (k_pump_ + std::sqrt(k_pump_ * k_pump_ - q_pump_sq));
  return k_offset_ - pump_deficit +
         (axial_deficit(k_signal_, q_s) + axial_deficit(k_idler_, q_i));
}

std::optional<double> TwoPhotonModel::delta_k(double q_s, double phi_s, double q_i,
                                              double phi_i) const {
  const double q_pump_sq = q_s * q_s + q_i * q_i + 2.0 * q_s * q_i * std::cos(phi_s - phi_i);
  auto base = base_mismatch(q_s, q_i, std::max(0.0, q_pump_sq));
  if (!base) return std::nullopt;
  const double qpx = q_s * std::cos(phi_s) + q_i * std::cos(phi_i);
  const double qpy = q_s * std::sin(phi_s) + q_i * std::sin(phi_i);
  return *base + walkoff_term(qpx, qpy);
}

std::complex<double> TwoPhotonModel::amplitude(double q_s, double phi_s, double q_i,
                                               double phi_i) const {
  const auto dk = delta_k(q_s, phi_s, q_i, phi_i);
  if (!dk) return {0.0, 0.0};
  const double qpx = q_s * std::cos(phi_s) + q_i * std::cos(phi_i);
  const double qpy = q_s * std::sin(phi_s) + q_i * std::sin(phi_i);
  return pump_envelope(pump_, qpx, qpy) * sinc_phasor(0.5 * *dk * length_);
}

std::optional<double> delta_k(const CrystalConfig& crystal, const PumpConfig& pump, double q_s,
                              double phi_s, double q_i, double phi_i) {
  return TwoPhotonModel(crystal, pump).delta_k(q_s, phi_s, q_i, phi_i);
}

std::complex<double> two_photon_amplitude(const CrystalConfig& crystal, const PumpConfig& pump,
                                          double q_s, double phi_s, double q_i, double phi_i) {
  return TwoPhotonModel(crystal, pump).amplitude(q_s, phi_s, q_i, phi_i);
}

double envelope_exponent_cutoff(const PumpConfig& pump, double floor) {
  if (pump.envelope == EnvelopeMode::Literal) return std::numeric_limits<double>::infinity();
  const double log_floor = std::log(floor);
  const int l = std::abs(pump.oam);
  if (l == 0) return -log_floor;
  // log f(g) = -g + (l/2) log(2g), peaked at g = l/2.
  auto log_f = [l](double g) { return -g + 0.5 * l * std::log(2.0 * g); };
  const double target = log_f(0.5 * l) + log_floor;
  double lo = 0.5 * l;
  double hi = lo + 1.0;
  while (log_f(hi) > target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (log_f(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

AzimuthTables azimuth_tables(int n) {
  AzimuthTables t;
  t.cos.resize(n);
  t.sin.resize(n);
  const double step = kTwoPi / n;
  for (int j = 0; j <= n / 2; ++j) {
    t.cos[j] = std::cos(j * step);
    t.sin[j] = std::sin(j * step);
  }
  // Exact values on the axes keep the mirror images bit-identical.
  t.sin[0] = 0.0;
  t.sin[n / 2] = 0.0;
  t.cos[n / 2] = -1.0;
  if (n % 4 == 0) {
    t.cos[n / 4] = 0.0;
    t.sin[n / 4] = 1.0;
  }
  for (int j = n / 2 + 1; j < n; ++j) {
    t.cos[j] = t.cos[n - j];
    t.sin[j] = -t.sin[n - j];
  }
  return t;
}

BiphotonField azimuthal_kernel(const CrystalConfig& crystal, const PumpConfig& pump,
                               const PolarGrid& grid, const KernelOptions& options) {
  const TwoPhotonModel model(crystal, pump);
  const int n = grid.n_azimuthal;
  std::vector<double> wq(grid.n_radial);
  for (int a = 0; a < grid.n_radial; ++a) wq[a] = grid.radial_weights[a] * grid.radial_nodes[a];

  BiphotonField field;
  field.grid = grid;
  field.kernel.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});

  detail::sweep_amplitudes(model, grid, options, [&](int a, int b, int js, int ji,
                                                     std::complex<double> phi) {
    field.kernel[static_cast<std::size_t>(js) * n + ji] += (wq[a] * wq[b]) * phi;
  });

  const double cell_area = grid.azimuthal_step() * grid.azimuthal_step();
  double norm = 0.0;
  for (const auto& v : field.kernel) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("non-finite two-photon kernel entry");
    }
    norm += std::norm(v);
  }
  field.norm = norm * cell_area;
  if (!(field.norm > 0.0)) {
    throw DomainError("two-photon amplitude vanishes on the whole grid (degenerate configuration)");
  }
  return field;
}

}  // namespace oamwalk
