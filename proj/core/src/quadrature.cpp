#include "oamwalk/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "oamwalk/error.hpp"
#include "oamwalk/units.hpp"

namespace oamwalk {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  if (!(b > a)) throw DomainError("Gauss-Legendre interval must have b > a");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // Newton iteration on P_n from the Tricomi initial guess; roots are
  // symmetric so only half are solved.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    auto legendre = [n](double x, double& derivative) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      // p0 = P_n(x), p1 = P_{n-1}(x)
      derivative = n * (x * p0 - p1) / (x * x - 1.0);
      return p0;
    };
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double step = legendre(z, dp) / dp;
      z -= step;
      if (std::abs(step) <= 4e-16) break;
    }
    legendre(z, dp);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace oamwalk
