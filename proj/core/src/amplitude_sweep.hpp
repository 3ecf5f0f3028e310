#pragma once

// Shared traversal of Phi(q_a, phi_s, q_b, phi_i) over a polar grid, used by
// the azimuthal kernel and the far-field map.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <thread>
#include <vector>

#include "oamwalk/biphoton.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk::detail {

// sinc(x) exp(ix)
inline std::complex<double> sinc_phasor(double x) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double sx = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : s / x;
  return {sx * c, sx * s};
}

// k - sqrt(k^2 - q^2) without cancellation; NaN when evanescent.
inline double axial_deficit(double k, double q) {
  const double q2 = q * q;
  if (!(q < k)) return std::numeric_limits<double>::quiet_NaN();
  return q2 / (k + std::sqrt(k * k - q2));
}

// Calls visit(a, b, j_s, j_i, Phi) for every grid point whose pump envelope
// clears options.envelope_floor. Rows j_s are split across threads; within
// one output row the visiting order is (a, b, d) regardless of thread count.
// Visitors must only write state owned by row j_s.
template <typename Visitor>
void sweep_amplitudes(const TwoPhotonModel& model, const PolarGrid& grid,
                      const KernelOptions& options, Visitor&& visit) {
  const PumpConfig& pump = model.pump();
  const int n = grid.n_azimuthal;
  const int nr = grid.n_radial;
  const auto trig = azimuth_tables(n);
  const auto& q = grid.radial_nodes;

  const double w2 = pump.waist_m * pump.waist_m;
  const double g_cut = envelope_exponent_cutoff(pump, options.envelope_floor);
  const double q2_cut = std::isinf(g_cut) ? g_cut : 4.0 * g_cut / w2;
  const double k_pump = model.k_pump();
  const double k_pump_sq = k_pump * k_pump;
  const double half_length = 0.5 * model.length();
  const int abs_oam = std::abs(pump.oam);
  const bool literal = pump.envelope == EnvelopeMode::Literal;
  const bool astig = pump.astig_beta != 0.0;
  const double astig_scale = 0.25 * pump.astig_beta * w2;

  std::vector<double> deficit(nr);
  for (int a = 0; a < nr; ++a) deficit[a] = axial_deficit(model.k_signal(), q[a]);
  // k_p - k_s - k_i
  const double k_offset = *model.base_mismatch(0.0, 0.0, 0.0);

  struct Cell {
    int d;
    double base;
    double magnitude;
  };

  auto rows = [&](int row_begin, int row_end) {
    std::vector<Cell> cells;
    cells.reserve(n);
    for (int a = 0; a < nr; ++a) {
      if (std::isnan(deficit[a])) continue;
      const double qa = q[a];
      for (int b = 0; b < nr; ++b) {
        if (std::isnan(deficit[b])) continue;
        const double qb = q[b];
        const double diff = qa - qb;
        if (diff * diff > q2_cut) continue;
        const double sum_sq = qa * qa + qb * qb;
        const double cross = 2.0 * qa * qb;
        const double pair_deficit = deficit[a] + deficit[b];

        // Candidate separations d = j_s - j_i with cos(2 pi d / N) <= c_star,
        // widened by one sample on each side; the exact test follows.
        int d_lo = 0;
        int d_hi = n - 1;
        if (!std::isinf(q2_cut) && cross > 0.0) {
          const double c_star = (q2_cut - sum_sq) / cross;
          if (c_star < -1.0) continue;
          if (c_star < 1.0) {
            const int d0 = static_cast<int>(std::floor(std::acos(c_star) / kTwoPi * n)) - 1;
            d_lo = std::max(0, d0);
            d_hi = std::min(n - 1, n - d0);
          }
        }
        cells.clear();
        for (int d = d_lo; d <= d_hi; ++d) {
          const double q_pump_sq = std::max(0.0, sum_sq + cross * trig.cos[d]);
          if (q_pump_sq > q2_cut || !(q_pump_sq < k_pump_sq)) continue;
          const double pump_deficit = q_pump_sq / (k_pump + std::sqrt(k_pump_sq - q_pump_sq));
          double magnitude = literal ? 1.0 : std::exp(-0.25 * w2 * q_pump_sq);
          if (abs_oam != 0) magnitude *= std::pow(0.5 * w2 * q_pump_sq, 0.5 * abs_oam);
          cells.push_back({d, k_offset - pump_deficit + pair_deficit, magnitude});
        }
        if (cells.empty()) continue;
        for (int js = row_begin; js < row_end; ++js) {
          const double ca = qa * trig.cos[js];
          const double sa = qa * trig.sin[js];
          for (const auto& cell : cells) {
            int ji = js - cell.d;
            if (ji < 0) ji += n;
            const double qpx = ca + qb * trig.cos[ji];
            const double qpy = sa + qb * trig.sin[ji];
            const double x = (cell.base + model.walkoff_term(qpx, qpy)) * half_length;
            double magnitude = cell.magnitude;
            if (literal) {
              const double s = qpx + qpy;
              magnitude *= std::exp(-0.25 * w2 * s * s);
            }
            std::complex<double> value = magnitude * sinc_phasor(x);
            double phase = 0.0;
            if (abs_oam != 0) phase += pump.oam * std::atan2(qpy, qpx);
            if (astig) phase += astig_scale * (qpx * qpx - qpy * qpy);
            if (phase != 0.0) value *= std::polar(1.0, phase);
            visit(a, b, js, ji, value);
          }
        }
      }
    }
  };

  const int threads = std::clamp(options.threads, 1, n);
  if (threads == 1) {
    rows(0, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(static_cast<long long>(n) * t / threads);
    const int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
    pool.emplace_back([&rows, begin, end] { rows(begin, end); });
  }
}

}  // namespace oamwalk::detail
