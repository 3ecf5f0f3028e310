#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oamwalk/biphoton.hpp"
#include "oamwalk/oam.hpp"

namespace oamwalk {

struct PipelineOptions {
  GridResolution resolution;
  int l_max = 10;
  int threads = 1;      // threads inside one kernel evaluation
  int pool_width = 1;   // concurrent sweep points
  double envelope_floor = 1e-18;
};

// Grid, kernel and spectrum for one configuration.
OamSpectrum compute_spectrum(const CrystalConfig& crystal, const PumpConfig& pump,
                             const PipelineOptions& options = {});

// In-medium Rayleigh range pi w_p^2 n_e(theta) / lambda_p.
double rayleigh_range(const CrystalConfig& crystal, const PumpConfig& pump);

inline constexpr int kSidebandReport = 3;

struct SweepResult {
  std::string axis;                 // "focusing" (sqrt(L/z_R)) or "rho_deg"
  std::vector<double> axis_values;  // strictly increasing
  std::vector<double> f_leak;
  std::vector<std::array<double, 2 * kSidebandReport + 1>> sidebands;  // P(-3..3)
  std::vector<double> crystal_length_m;
  nlohmann::json config;            // snapshot of everything the sweep held fixed

  double probability(std::size_t i, int n) const { return sidebands[i][n + kSidebandReport]; }
};

// Holds w_p fixed and sets L = z_R F^2 for each F in (0, 2].
SweepResult sweep_focusing(const CrystalConfig& crystal, const PumpConfig& pump,
                           const std::vector<double>& focusing_values,
                           const PipelineOptions& options = {});

// Walk-off angles in degrees, within (-0.2, 0.2) rad.
SweepResult sweep_walkoff(const CrystalConfig& crystal, const PumpConfig& pump,
                          const std::vector<double>& rho_deg,
                          const PipelineOptions& options = {});

inline const std::vector<double> kDefaultScalingRhoDeg = {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
inline constexpr double kProbabilityFloor = 1e-14;

struct ScalingFit {
  int order = 0;
  std::vector<double> rho_deg;
  std::vector<double> probability;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;  // ln P at tan(rho) = 1
};

// Least-squares fit of ln P(n) against ln tan(rho) over the sweep points with
// P(n) above the floor. Throws ConvergenceError with fewer than 5 such points.
ScalingFit fit_scaling_law(const SweepResult& sweep, int order);

struct JacobiAngerOptions {
  GridResolution resolution;
  int z_nodes = 48;
  double envelope_floor = 1e-18;
};

struct JacobiAngerResult {
  int max_bessel_order = 0;
  std::map<int, double> total_oam;  // P(n), |n| <= 2 max_bessel_order

  double probability(int n) const;
};

// Perturbative total-OAM distribution: the walk-off exponential inside the z
// integral of the phase-matching function is expanded in Bessel harmonics up
// to |m| <= max_bessel_order. Requires an isotropic envelope without
// astigmatism and L tan(rho) / w_p < 0.3.
JacobiAngerResult jacobi_anger_expansion(const CrystalConfig& crystal, const PumpConfig& pump,
                                         int max_bessel_order,
                                         const JacobiAngerOptions& options = {});

// P(n) from the expansion; throws ConfigError when max_bessel_order < |n|.
double jacobi_anger_sideband(const CrystalConfig& crystal, const PumpConfig& pump, int order,
                             int max_bessel_order, const JacobiAngerOptions& options = {});

enum class AstigmatismObjective { OddSidebands, TotalLeak };

struct AstigmatismResult {
  AstigmatismObjective objective = AstigmatismObjective::OddSidebands;
  double beta_opt = 0.0;
  double objective_before = 0.0;
  double objective_after = 0.0;
  std::map<int, double> before;  // P(n), |n| <= 3, at beta = 0
  std::map<int, double> after;   // at beta_opt
  bool boundary = false;         // minimum not bracketed inside the range
  bool flat = false;             // objective constant over the range
  int evaluations = 0;
};

double astigmatism_objective(const OamSpectrum& spectrum, AstigmatismObjective objective);

// Golden-section search over beta in [-beta_max, beta_max].
AstigmatismResult optimize_astigmatism(const CrystalConfig& crystal, const PumpConfig& pump,
                                       double beta_max = 10.0,
                                       AstigmatismObjective objective =
                                           AstigmatismObjective::OddSidebands,
                                       const PipelineOptions& options = {},
                                       double tolerance = 1e-3);

std::string to_string(AstigmatismObjective objective);
AstigmatismObjective parse_objective(const std::string& name);

nlohmann::json crystal_to_json(const CrystalConfig& crystal);
nlohmann::json pump_to_json(const PumpConfig& pump);

// "<axis>,f_leak,P_-3,...,P_3" with 17 significant digits.
std::string sweep_to_csv(const SweepResult& sweep);
nlohmann::json sweep_to_json(const SweepResult& sweep);
nlohmann::json fit_to_json(const ScalingFit& fit);
std::string fit_to_csv(const ScalingFit& fit);
nlohmann::json astigmatism_to_json(const AstigmatismResult& result);

}  // namespace oamwalk
