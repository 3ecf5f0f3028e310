#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "oamwalk/biphoton.hpp"
#include "oamwalk/error.hpp"
#include "oamwalk/quadrature.hpp"
#include "support.hpp"

using namespace oamwalk;

TEST(Pump, GaussianEnvelope) {
  const auto p = test::gaussian_pump();
  EXPECT_DOUBLE_EQ(std::abs(pump_envelope(p, 0.0, 0.0)), 1.0);
  const double q = 1.3e4;
  const double expected = std::exp(-p.waist_m * p.waist_m * q * q / 4.0);
  EXPECT_NEAR(std::abs(pump_envelope(p, q, 0.0)), expected, 1e-15);
  EXPECT_NEAR(std::abs(pump_envelope(p, 0.0, q)), expected, 1e-15);
}

TEST(Pump, LaguerreGaussCarriesItsPhaseWinding) {
  auto p = test::gaussian_pump();
  p.oam = 2;
  EXPECT_EQ(std::abs(pump_envelope(p, 0.0, 0.0)), 0.0);
  const double q = 5e3;
  const auto a = pump_envelope(p, q, 0.0);
  const auto b = pump_envelope(p, q * std::cos(0.4), q * std::sin(0.4));
  EXPECT_NEAR(std::abs(a), std::abs(b), 1e-14 * std::abs(a));
  EXPECT_NEAR(std::remainder(std::arg(b / a) - 0.8, kTwoPi), 0.0, 1e-12);
}

TEST(Pump, AstigmatismIsAPurePhase) {
  auto p = test::gaussian_pump();
  const auto plain = pump_envelope(p, 4e3, -2e3);
  p.astig_beta = 2.5;
  const auto astig = pump_envelope(p, 4e3, -2e3);
  EXPECT_NEAR(std::abs(astig), std::abs(plain), 1e-15);
  EXPECT_GT(std::abs(std::arg(astig / plain)), 1e-3);
}

TEST(Pump, Validation) {
  auto p = test::gaussian_pump();
  p.waist_m = 0.0;
  EXPECT_THROW(validate(p), DomainError);
  p = test::gaussian_pump();
  p.oam = 9;
  EXPECT_THROW(validate(p), DomainError);
  p = test::gaussian_pump();
  p.walkoff_rho = 0.2;
  EXPECT_THROW(validate(p), DomainError);
}

TEST(Quadrature, GaussLegendreIsExactToDegree2nMinus1) {
  for (int n : {1, 4, 9, 24}) {
    const auto rule = gauss_legendre(n, -0.5, 2.0);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
      EXPECT_NEAR(sum, exact, 1e-12 * std::max(1.0, std::abs(exact))) << n << " " << k;
    }
    for (int i = 1; i < n; ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
  }
}

TEST(Grid, RadialWeightsSumToWidth) {
  const auto g = make_polar_grid(96, 128, 1.0e6, 3.0e6);
  double sum = 0.0;
  for (double w : g.radial_weights) sum += w;
  EXPECT_NEAR(sum / 2.0e6, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(g.azimuthal_step(), kTwoPi / 128);
}

TEST(Grid, AzimuthalCountMustBeAPowerOfTwo) {
  EXPECT_THROW(make_polar_grid(8, 96, 0.0, 1.0), DomainError);
  EXPECT_THROW(make_polar_grid(8, 2, 0.0, 1.0), DomainError);
  EXPECT_NO_THROW(make_polar_grid(8, 64, 0.0, 1.0));
}

TEST(Grid, WindowPolicies) {
  const auto c = test::collinear_bbo(3.0);
  const auto p = test::gaussian_pump(0.0, 20.0);
  const double lambda_s = 2.0 * p.lambda_um * 1e-6;
  const double sinc_h = 3.0 * std::sqrt(4.0 * kPi / (lambda_s * c.length_m));
  const auto lobes = emission_window(c, p, WindowPolicy::SincLobes);
  const auto floor = emission_window(c, p, WindowPolicy::PumpFloor);
  EXPECT_NEAR(lobes.half_width, sinc_h, 1e-9 * sinc_h);
  EXPECT_NEAR(floor.half_width, std::max(6.0 / p.waist_m, sinc_h), 1e-9 * sinc_h);
  EXPECT_EQ(lobes.q_min, 0.0);

  const auto nc = emission_window(test::noncollinear_bbo(), p);
  EXPECT_GT(nc.ring_radius, 1e6);
  EXPECT_NEAR(nc.q_max - nc.ring_radius, nc.half_width, 1e-6);

  GridResolution r{16, 64, 2.0, WindowPolicy::SincLobes};
  EXPECT_NEAR(make_emission_grid(c, p, r).q_max, 2.0 * sinc_h, 1e-9 * sinc_h);
}

TEST(Grid, SuggestedAzimuthalSamples) {
  const auto c = test::collinear_bbo(1.0);
  const auto p = test::gaussian_pump(1.0, 500.0);
  const int n = suggested_azimuthal_samples(c, p);
  EXPECT_EQ(n & (n - 1), 0);
  EXPECT_GE(n, 4.0 * emission_window(c, p).q_max * p.waist_m);
  EXPECT_EQ(suggested_azimuthal_samples(c, test::gaussian_pump(0.0, 1.0)), 128);
}

TEST(Biphoton, Sinc) {
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(kPi), 0.0, 1e-16);
  EXPECT_NEAR(sinc(1e-9), 1.0, 1e-16);
  EXPECT_NEAR(sinc(2.0), std::sin(2.0) / 2.0, 1e-16);
}
