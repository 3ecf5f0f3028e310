#pragma once

#include <vector>

#include "oamwalk/dispersion.hpp"
#include "oamwalk/pump.hpp"

namespace oamwalk {

// Tensor grid in (q, phi) shared by signal and idler: Gauss-Legendre in the
// transverse wavevector magnitude, uniform in azimuth.
struct PolarGrid {
  int n_radial = 0;
  int n_azimuthal = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;

  double azimuthal_step() const;
  double phi(int j) const { return j * azimuthal_step(); }
};

// n_azimuthal must be a power of two >= 4.
PolarGrid make_polar_grid(int n_radial, int n_azimuthal, double q_min, double q_max);

// How wide the radial window is. The coherent radial integral of W picks up
// slowly decaying sinc tails, so the window must scale with the sinc lobe for
// results at different crystal lengths to be comparable.
enum class WindowPolicy {
  SincLobes,  // h = 3 sqrt(4 pi / (lambda_s L))
  PumpFloor,  // h = max(6 / w_p, 3 sqrt(4 pi / (lambda_s L)))
};

struct GridResolution {
  int n_radial = 96;
  int n_azimuthal = 128;
  double window_scale = 1.0;  // multiplies the emission half-width
  WindowPolicy window = WindowPolicy::SincLobes;
};

struct EmissionWindow {
  double q_min = 0.0;
  double q_max = 0.0;
  double ring_radius = 0.0;  // 0 for collinear
  double half_width = 0.0;
};

// Radial support of the emission. Collinear: [0, h]. Non-collinear: annulus
// [q0 - h, q0 + h] (clipped at 0) around the phase-matched ring radius q0.
EmissionWindow emission_window(const CrystalConfig& crystal, const PumpConfig& pump,
                               WindowPolicy policy = WindowPolicy::SincLobes);

// Power-of-two azimuthal sample count that resolves the single-photon OAM
// content, roughly |l| <~ q_max w_p: N >= 4 q_max w_p, clamped to [min_n, max_n].
int suggested_azimuthal_samples(const CrystalConfig& crystal, const PumpConfig& pump,
                                WindowPolicy policy = WindowPolicy::SincLobes,
                                double window_scale = 1.0, int min_n = 128, int max_n = 4096);

PolarGrid make_emission_grid(const CrystalConfig& crystal, const PumpConfig& pump,
                             const GridResolution& resolution = {});

}  // namespace oamwalk
