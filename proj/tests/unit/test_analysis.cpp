#include <atomic>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oamwalk/analysis.hpp"
#include "oamwalk/error.hpp"
#include "oamwalk/golden_section.hpp"
#include "oamwalk/work_pool.hpp"
#include "support.hpp"

using namespace oamwalk;

namespace {

PipelineOptions coarse() {
  PipelineOptions o;
  o.resolution = {16, 32};
  o.l_max = 4;
  return o;
}

SweepResult synthetic_walkoff_sweep(const std::vector<double>& rho_deg, double exponent) {
  SweepResult s;
  s.axis = "rho_deg";
  s.axis_values = rho_deg;
  for (double r : rho_deg) {
    const double p1 = 0.3 * std::pow(std::tan(deg_to_rad(r)), exponent);
    s.f_leak.push_back(2 * p1);
    s.sidebands.push_back({0.0, 0.0, p1, 1.0 - 2 * p1, p1, 0.0, 0.0});
    s.crystal_length_m.push_back(3e-3);
  }
  return s;
}

}  // namespace

TEST(GoldenSection, FindsAQuadraticMinimum) {
  int calls = 0;
  const auto r = golden_section_minimize(
      [&](double x) {
        ++calls;
        return (x - 1.3) * (x - 1.3) + 2.0;
      },
      -4.0, 4.0, 1e-6);
  EXPECT_NEAR(r.x, 1.3, 1e-5);
  EXPECT_NEAR(r.value, 2.0, 1e-10);
  EXPECT_EQ(r.evaluations, calls);
  EXPECT_FALSE(r.boundary);
  EXPECT_FALSE(r.flat);
}

TEST(GoldenSection, ReportsBoundaryAndFlatObjectives) {
  const auto edge = golden_section_minimize([](double x) { return x; }, -1.0, 1.0, 1e-4);
  EXPECT_TRUE(edge.boundary);
  EXPECT_EQ(edge.x, -1.0);
  const auto flat = golden_section_minimize([](double) { return 0.5; }, -2.0, 4.0, 1e-4);
  EXPECT_TRUE(flat.flat);
  EXPECT_EQ(flat.x, 1.0);
}

TEST(WorkPool, PreservesIndexOrder) {
  for (int width : {1, 2, 5}) {
    const auto out = ordered_parallel_map<int>(37, width, [](std::size_t i) {
      return static_cast<int>(i * i);
    });
    ASSERT_EQ(out.size(), 37u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
}

TEST(WorkPool, RethrowsWorkerExceptions) {
  std::atomic<int> done{0};
  EXPECT_THROW(ordered_parallel_map<int>(20, 3,
                                         [&](std::size_t i) {
                                           if (i == 7) throw DomainError("bad point");
                                           ++done;
                                           return 0;
                                         }),
               DomainError);
}

TEST(ScalingFit, RecoversASyntheticPowerLaw) {
  const auto sweep = synthetic_walkoff_sweep(kDefaultScalingRhoDeg, 2.0);
  const auto fit = fit_scaling_law(sweep, 1);
  EXPECT_NEAR(fit.slope, 2.0, 1e-10);
  EXPECT_LT(fit.slope_stderr, 1e-8);
  EXPECT_NEAR(fit.intercept, std::log(0.3), 1e-9);
  EXPECT_EQ(fit.rho_deg.size(), kDefaultScalingRhoDeg.size());
  const auto csv = fit_to_csv(fit);
  EXPECT_NE(csv.find("rho_deg"), std::string::npos);
  EXPECT_EQ(fit_to_json(fit)["order"], 1);
}

TEST(ScalingFit, RejectsBadInput) {
  EXPECT_THROW(fit_scaling_law(synthetic_walkoff_sweep({1.0, 2.0, 3.0, 4.0}, 2.0), 1),
               ConvergenceError);
  // Points at or below the probability floor do not count.
  EXPECT_THROW(fit_scaling_law(synthetic_walkoff_sweep(kDefaultScalingRhoDeg, 2.0), 3),
               ConvergenceError);
  EXPECT_THROW(fit_scaling_law(synthetic_walkoff_sweep(kDefaultScalingRhoDeg, 2.0), 4),
               ConfigError);
  auto focus = synthetic_walkoff_sweep(kDefaultScalingRhoDeg, 2.0);
  focus.axis = "focusing";
  EXPECT_THROW(fit_scaling_law(focus, 1), ConfigError);
}

TEST(Sweep, ValidatesItsAxis) {
  const auto c = test::collinear_bbo();
  const auto p = test::gaussian_pump();
  EXPECT_THROW(sweep_focusing(c, p, {}, coarse()), DomainError);
  EXPECT_THROW(sweep_focusing(c, p, {0.5, 0.3}, coarse()), DomainError);
  EXPECT_THROW(sweep_focusing(c, p, {0.0, 0.3}, coarse()), DomainError);
  EXPECT_THROW(sweep_focusing(c, p, {0.3, 2.5}, coarse()), DomainError);
  EXPECT_THROW(sweep_walkoff(c, p, {1.0, 1.0}, coarse()), DomainError);
  EXPECT_THROW(sweep_walkoff(c, p, {1.0, 20.0}, coarse()), DomainError);
}

TEST(Sweep, FocusingSetsLengthFromRayleighRange) {
  const auto c = test::noncollinear_bbo();
  const auto p = test::gaussian_pump(2.0, 60.0);
  const auto s = sweep_focusing(c, p, {0.2, 0.5}, coarse());
  const double zr = rayleigh_range(c, p);
  EXPECT_NEAR(s.crystal_length_m[0], zr * 0.04, 1e-15);
  EXPECT_NEAR(s.crystal_length_m[1], zr * 0.25, 1e-15);
  EXPECT_EQ(s.axis, "focusing");
  const auto csv = sweep_to_csv(s);
  EXPECT_EQ(csv.rfind("focusing,f_leak,P_-3,P_-2,P_-1,P_0,P_1,P_2,P_3\n", 0), 0u);
  EXPECT_EQ(sweep_to_json(s)["points"].size(), 2u);
}

TEST(Sweep, DeterministicAcrossPoolWidths) {
  const auto c = test::noncollinear_bbo();
  const auto p = test::gaussian_pump();
  auto o = coarse();
  const auto serial = sweep_walkoff(c, p, {0.5, 1.0, 2.0, 4.0}, o);
  o.pool_width = 3;
  o.threads = 2;
  const auto pooled = sweep_walkoff(c, p, {0.5, 1.0, 2.0, 4.0}, o);
  EXPECT_EQ(sweep_to_csv(serial), sweep_to_csv(pooled));
}

TEST(RayleighRange, UsesTheInMediumIndex) {
  const auto c = test::collinear_bbo();
  const auto p = test::gaussian_pump(0.0, 100.0);
  const double n = index_e_at_angle(c.sellmeier, c.theta, p.lambda_um);
  EXPECT_NEAR(rayleigh_range(c, p), kPi * 1e-8 * n / 0.355e-6, 1e-12);
}

TEST(JacobiAnger, NoWalkoffKeepsEverythingInTheCarrier) {
  const auto c = test::collinear_bbo(1.0);
  const auto p = test::gaussian_pump(0.0, 500.0);
  JacobiAngerOptions o;
  o.resolution = {16, 32};
  o.z_nodes = 4;
  const auto r = jacobi_anger_expansion(c, p, 2, o);
  EXPECT_NEAR(r.probability(0), 1.0, 1e-12);
  EXPECT_NEAR(r.probability(1), 0.0, 1e-12);
}

TEST(JacobiAnger, DomainAndTruncationChecks) {
  const auto c = test::collinear_bbo(1.0);
  auto p = test::gaussian_pump(1.0, 500.0);
  EXPECT_THROW(jacobi_anger_sideband(c, p, 2, 1), ConfigError);
  auto astig = p;
  astig.astig_beta = 1.0;
  EXPECT_THROW(jacobi_anger_expansion(c, astig, 2), DomainError);
  auto narrow = test::gaussian_pump(10.0, 5.0);
  EXPECT_THROW(jacobi_anger_expansion(c, narrow, 2), DomainError);
}

TEST(Astigmatism, ObjectiveIsEvenInWalkoff) {
  const auto c = test::collinear_bbo();
  auto plus = test::gaussian_pump(3.0);
  auto minus = test::gaussian_pump(-3.0);
  plus.astig_beta = minus.astig_beta = 1.5;
  for (auto objective : {AstigmatismObjective::OddSidebands, AstigmatismObjective::TotalLeak}) {
    const double a = astigmatism_objective(compute_spectrum(c, plus, coarse()), objective);
    const double b = astigmatism_objective(compute_spectrum(c, minus, coarse()), objective);
    EXPECT_NEAR(a, b, 1e-10 * std::max(a, 1e-30));
  }
}

TEST(Astigmatism, FlatWithoutWalkoff) {
  const auto r =
      optimize_astigmatism(test::collinear_bbo(), test::gaussian_pump(0.0), 2.0,
                           AstigmatismObjective::OddSidebands, coarse(), 1e-2);
  EXPECT_TRUE(r.flat);
  EXPECT_EQ(r.beta_opt, 0.0);
  EXPECT_EQ(astigmatism_to_json(r)["objective"], "odd-sidebands");
}

TEST(Astigmatism, ObjectiveNames) {
  EXPECT_EQ(parse_objective("total-leak"), AstigmatismObjective::TotalLeak);
  EXPECT_EQ(to_string(AstigmatismObjective::OddSidebands), "odd-sidebands");
  EXPECT_THROW(parse_objective("odd"), ConfigError);
  EXPECT_THROW(optimize_astigmatism(test::collinear_bbo(), test::gaussian_pump(), -1.0),
               ConfigError);
}
