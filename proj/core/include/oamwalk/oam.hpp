#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oamwalk/biphoton.hpp"

namespace oamwalk {

// Joint OAM spectrum S(l_s, l_i) of the two-photon state.
//
// The projection uses the OAM eigenmode overlap
//   A(l_s, l_i) = sum W(phi_s, phi_i) exp(-i l_s phi_s) exp(-i l_i phi_i) (2 pi / N)^2,
// so a pump carrying exp(i l_p phi) populates l_s + l_i = l_p. All N^2 modes
// of the grid are normalized to unit total probability; `window` keeps the
// entries with |l_s|, |l_i| <= l_max and `truncation_mass` the rest.
struct OamSpectrum {
  int l_max = 0;
  int l_tot_pump = 0;
  int n_azimuthal = 0;
  std::vector<double> window;  // row-major, (2 l_max + 1)^2, l_s major
  double truncation_mass = 0.0;
  // Total-OAM marginal over every grid mode, folded modulo N onto
  // n in [-N/2, N/2); index n + N/2.
  std::vector<double> total_oam;

  int width() const { return 2 * l_max + 1; }
  // S(l_s, l_i) inside the window.
  double at(int l_s, int l_i) const;
  // P(l_s + l_i = n) over the full grid; 0 outside [-N/2, N/2).
  double total(int n) const;
};

// Throws DomainError when l_max > N/4 (aliasing guard) or l_max < 0.
OamSpectrum oam_spectrum(const BiphotonField& field, int l_max, int l_tot_pump = 0);

// P(n) = sum_{l_s} S(l_s, n - l_s), |n| <= n_max, computed over all grid modes.
std::map<int, double> total_oam_distribution(const OamSpectrum& spectrum, int n_max);

// 1 - P(l_tot_pump), the probability that the pair does not carry the pump OAM.
double f_leak(const OamSpectrum& spectrum);

inline constexpr int kSchemaVersion = 1;

nlohmann::json spectrum_to_json(const OamSpectrum& spectrum);
// "l_s,l_i,S" rows for the window, 17 significant digits.
std::string spectrum_to_csv(const OamSpectrum& spectrum);

}  // namespace oamwalk
