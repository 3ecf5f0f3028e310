#include "oamwalk/oam.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "oamwalk/error.hpp"
#include "oamwalk/serialize.hpp"

namespace oamwalk {
namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> forward_dft_2d(const std::vector<std::complex<double>>& in,
                                                 int n) {
  std::vector<std::complex<double>> out(in.size());
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(n, n, src, dst, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

int wrap(int l, int n) {
  const int m = l % n;
  return m < 0 ? m + n : m;
}

}  // namespace

double OamSpectrum::at(int l_s, int l_i) const {
  if (std::abs(l_s) > l_max || std::abs(l_i) > l_max) return 0.0;
  return window[static_cast<std::size_t>(l_s + l_max) * width() + (l_i + l_max)];
}

double OamSpectrum::total(int n) const {
  const int half = n_azimuthal / 2;
  if (n < -half || n >= half) return 0.0;
  return total_oam[n + half];
}

OamSpectrum oam_spectrum(const BiphotonField& field, int l_max, int l_tot_pump) {
  const int n = field.size();
  if (l_max < 0) throw DomainError("l_max must be non-negative");
  if (4 * l_max > n) {
    throw DomainError("l_max = " + std::to_string(l_max) + " aliases on a " + std::to_string(n) +
                      "-point azimuthal grid (need l_max <= N/4)");
  }
  // FFTW_FORWARD computes sum x_j exp(-2 pi i j k / N): the eigenmode overlap.
  const auto amplitude = forward_dft_2d(field.kernel, n);
  const double cell = field.grid.azimuthal_step() * field.grid.azimuthal_step();

  std::vector<double> prob(amplitude.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amplitude.size(); ++i) {
    prob[i] = std::norm(amplitude[i] * cell);
    total += prob[i];
  }
  if (!(total > 0.0)) throw DomainError("OAM projection of an empty field");

  OamSpectrum spec;
  spec.l_max = l_max;
  spec.l_tot_pump = l_tot_pump;
  spec.n_azimuthal = n;
  spec.window.assign(static_cast<std::size_t>(spec.width()) * spec.width(), 0.0);
  spec.total_oam.assign(n, 0.0);

  const int half = n / 2;
  double inside = 0.0;
  for (int ks = 0; ks < n; ++ks) {
    const int l_s = ks < half ? ks : ks - n;
    for (int ki = 0; ki < n; ++ki) {
      const int l_i = ki < half ? ki : ki - n;
      const double p = prob[static_cast<std::size_t>(ks) * n + ki] / total;
      spec.total_oam[wrap(l_s + l_i + half, n)] += p;
      if (std::abs(l_s) <= l_max && std::abs(l_i) <= l_max) {
        spec.window[static_cast<std::size_t>(l_s + l_max) * spec.width() + (l_i + l_max)] = p;
        inside += p;
      }
    }
  }
  spec.truncation_mass = std::max(0.0, 1.0 - inside);
  return spec;
}

std::map<int, double> total_oam_distribution(const OamSpectrum& spectrum, int n_max) {
  std::map<int, double> out;
  for (int m = -n_max; m <= n_max; ++m) out[m] = spectrum.total(m);
  return out;
}

double f_leak(const OamSpectrum& spectrum) {
  return std::clamp(1.0 - spectrum.total(spectrum.l_tot_pump), 0.0, 1.0);
}

nlohmann::json spectrum_to_json(const OamSpectrum& spectrum) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["l_max"] = spectrum.l_max;
  j["l_tot_pump"] = spectrum.l_tot_pump;
  j["n_azimuthal"] = spectrum.n_azimuthal;
  j["S"] = spectrum.window;
  j["truncation_mass"] = spectrum.truncation_mass;
  j["f_leak"] = f_leak(spectrum);
  nlohmann::json marginal = nlohmann::json::object();
  const int span = std::min(spectrum.n_azimuthal / 2 - 1, 2 * spectrum.l_max);
  for (int m = -span; m <= span; ++m) marginal[std::to_string(m)] = spectrum.total(m);
  j["total_oam"] = marginal;
  return j;
}

std::string spectrum_to_csv(const OamSpectrum& spectrum) {
  std::ostringstream out;
  out << "l_s,l_i,S\n";
  for (int ls = -spectrum.l_max; ls <= spectrum.l_max; ++ls) {
    for (int li = -spectrum.l_max; li <= spectrum.l_max; ++li) {
      out << ls << ',' << li << ',' << format_double(spectrum.at(ls, li)) << '\n';
    }
  }
  return out.str();
}

}  // namespace oamwalk
