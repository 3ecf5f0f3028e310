#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oamwalk {

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
  bool boundary = false;  // minimum not bracketed: x sits on an end of the range
  bool flat = false;      // objective spread below flat_tolerance: x is the midpoint
};

// Golden-section search for a minimum of f on [lo, hi], stopping once the
// bracket is narrower than tol.
inline GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f,
                                                   double lo, double hi, double tol,
                                                   double flat_tolerance = 1e-14) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  GoldenSectionResult result;
  std::vector<double> seen;
  auto eval = [&](double x) {
    const double v = f(x);
    ++result.evaluations;
    seen.push_back(v);
    return v;
  };

  const double range_lo = lo;
  const double range_hi = hi;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = eval(d);
    }
  }
  result.x = fc <= fd ? c : d;
  result.value = std::min(fc, fd);

  if (result.x - range_lo <= 2.0 * tol || range_hi - result.x <= 2.0 * tol) {
    const double edge = result.x - range_lo <= 2.0 * tol ? range_lo : range_hi;
    const double f_edge = eval(edge);
    result.boundary = true;
    if (f_edge <= result.value) {
      result.x = edge;
      result.value = f_edge;
    }
  }

  double vmin = seen.front();
  double vmax = seen.front();
  for (double v : seen) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (vmax - vmin <= flat_tolerance) {
    result.flat = true;
    result.boundary = false;
    result.x = 0.5 * (range_lo + range_hi);
    result.value = f(result.x);
    ++result.evaluations;
  }
  return result;
}

}  // namespace oamwalk
