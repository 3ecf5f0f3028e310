#include "oamwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>

#include <fftw3.h>

#include "oamwalk/error.hpp"
#include "oamwalk/golden_section.hpp"
#include "oamwalk/quadrature.hpp"
#include "oamwalk/serialize.hpp"
#include "oamwalk/units.hpp"
#include "oamwalk/work_pool.hpp"

namespace oamwalk {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_axis(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw DomainError(std::string(what) + " sweep has no points");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError(std::string(what) + " value is not finite");
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw DomainError(std::string(what) + " values must be strictly increasing");
    }
  }
}

std::array<double, 2 * kSidebandReport + 1> sidebands_of(const OamSpectrum& spec) {
  std::array<double, 2 * kSidebandReport + 1> p{};
  for (int n = -kSidebandReport; n <= kSidebandReport; ++n) {
    p[n + kSidebandReport] = spec.total(spec.l_tot_pump + n);
  }
  return p;
}

std::map<int, double> sideband_map(const OamSpectrum& spec) {
  std::map<int, double> out;
  for (int n = -kSidebandReport; n <= kSidebandReport; ++n) {
    out[n] = spec.total(spec.l_tot_pump + n);
  }
  return out;
}

nlohmann::json options_to_json(const PipelineOptions& options) {
  return {{"n_radial", options.resolution.n_radial},
          {"n_azimuthal", options.resolution.n_azimuthal},
          {"l_max", options.l_max},
          {"envelope_floor", options.envelope_floor}};
}

SweepResult run_sweep(std::string axis, const std::vector<double>& values,
                      const std::vector<std::pair<CrystalConfig, PumpConfig>>& jobs,
                      const PipelineOptions& options) {
  auto spectra = ordered_parallel_map<OamSpectrum>(
      jobs.size(), options.pool_width,
      [&](std::size_t i) { return compute_spectrum(jobs[i].first, jobs[i].second, options); });
  SweepResult result;
  result.axis = std::move(axis);
  result.axis_values = values;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double leak = f_leak(spectra[i]);
    if (!std::isfinite(leak)) throw DomainError("sweep produced a non-finite f_leak");
    result.f_leak.push_back(leak);
    result.sidebands.push_back(sidebands_of(spectra[i]));
    result.crystal_length_m.push_back(jobs[i].first.length_m);
  }
  return result;
}

// J_m(x) for any integer m and real x.
double bessel(int m, double x) {
  const int am = std::abs(m);
  double v = x == 0.0 ? (am == 0 ? 1.0 : 0.0) : std::cyl_bessel_j(am, std::abs(x));
  const bool flip = ((m < 0) != (x < 0.0)) && (am % 2 == 1);
  return flip ? -v : v;
}

// Largest |m| whose J_m is not negligible against J_0 ... J_M.
int active_order(const std::vector<double>& j, int m_max) {
  double peak = 0.0;
  for (double v : j) peak = std::max(peak, std::abs(v));
  int reach = m_max;
  while (reach > 0 && std::abs(j[reach + m_max]) < 1e-18 * peak &&
         std::abs(j[m_max - reach]) < 1e-18 * peak) {
    --reach;
  }
  return reach;
}

}  // namespace

OamSpectrum compute_spectrum(const CrystalConfig& crystal, const PumpConfig& pump,
                             const PipelineOptions& options) {
  const auto grid = make_emission_grid(crystal, pump, options.resolution);
  KernelOptions kernel_options;
  kernel_options.threads = options.threads;
  kernel_options.envelope_floor = options.envelope_floor;
  const auto field = azimuthal_kernel(crystal, pump, grid, kernel_options);
  return oam_spectrum(field, options.l_max, pump.oam);
}

double rayleigh_range(const CrystalConfig& crystal, const PumpConfig& pump) {
  validate(pump);
  const double n = index_e_at_angle(crystal.sellmeier, crystal.theta, pump.lambda_um);
  return kPi * pump.waist_m * pump.waist_m * n / um_to_m(pump.lambda_um);
}

SweepResult sweep_focusing(const CrystalConfig& crystal, const PumpConfig& pump,
                           const std::vector<double>& focusing_values,
                           const PipelineOptions& options) {
  check_axis(focusing_values, "focusing");
  for (double f : focusing_values) {
    if (!(f > 0.0 && f <= 2.0)) throw DomainError("focusing values must lie in (0, 2]");
  }
  const double z_r = rayleigh_range(crystal, pump);
  std::vector<std::pair<CrystalConfig, PumpConfig>> jobs;
  for (double f : focusing_values) {
    CrystalConfig c = crystal;
    c.length_m = z_r * f * f;
    jobs.emplace_back(c, pump);
  }
  auto result = run_sweep("focusing", focusing_values, jobs, options);
  result.config = {{"crystal", crystal_to_json(crystal)},
                   {"pump", pump_to_json(pump)},
                   {"grid", options_to_json(options)},
                   {"knob", "crystal length at fixed pump waist, L = z_R F^2"},
                   {"rayleigh_range_convention", "z_R = pi w_p^2 n_e(theta) / lambda_p"},
                   {"rayleigh_range_m", z_r}};
  return result;
}

SweepResult sweep_walkoff(const CrystalConfig& crystal, const PumpConfig& pump,
                          const std::vector<double>& rho_deg, const PipelineOptions& options) {
  check_axis(rho_deg, "walk-off");
  std::vector<std::pair<CrystalConfig, PumpConfig>> jobs;
  for (double r : rho_deg) {
    PumpConfig p = pump;
    p.walkoff_rho = deg_to_rad(r);
    validate(p);
    jobs.emplace_back(crystal, p);
  }
  auto result = run_sweep("rho_deg", rho_deg, jobs, options);
  result.config = {{"crystal", crystal_to_json(crystal)},
                   {"pump", pump_to_json(pump)},
                   {"grid", options_to_json(options)}};
  return result;
}

ScalingFit fit_scaling_law(const SweepResult& sweep, int order) {
  if (sweep.axis != "rho_deg") throw ConfigError("scaling fit needs a walk-off sweep");
  if (order == 0 || std::abs(order) > kSidebandReport) {
    throw ConfigError("scaling fit order must satisfy 1 <= |n| <= 3");
  }
  ScalingFit fit;
  fit.order = order;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < sweep.axis_values.size(); ++i) {
    const double p = sweep.probability(i, order);
    const double t = std::tan(deg_to_rad(sweep.axis_values[i]));
    if (!(p > kProbabilityFloor) || !(t > 0.0)) continue;
    fit.rho_deg.push_back(sweep.axis_values[i]);
    fit.probability.push_back(p);
    xs.push_back(std::log(t));
    ys.push_back(std::log(p));
  }
  const std::size_t m = xs.size();
  if (m < 5) {
    throw ConvergenceError("scaling fit for n = " + std::to_string(order) + " has " +
                           std::to_string(m) + " points above the probability floor, needs 5");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw ConvergenceError("scaling fit needs distinct walk-off angles");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.slope_stderr = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  return fit;
}

double JacobiAngerResult::probability(int n) const {
  const auto it = total_oam.find(n);
  return it == total_oam.end() ? 0.0 : it->second;
}

JacobiAngerResult jacobi_anger_expansion(const CrystalConfig& crystal, const PumpConfig& pump,
                                         int max_bessel_order,
                                         const JacobiAngerOptions& options) {
  validate(crystal);
  validate(pump);
  if (max_bessel_order < 0) throw ConfigError("Bessel truncation order must be non-negative");
  if (pump.envelope != EnvelopeMode::Isotropic || pump.astig_beta != 0.0) {
    throw DomainError("the Bessel expansion needs a rotationally symmetric pump envelope");
  }
  const double t = std::tan(pump.walkoff_rho);
  if (std::abs(crystal.length_m * t / pump.waist_m) >= 0.3) {
    throw DomainError("L tan(rho) / w_p must stay below 0.3 for the perturbative expansion");
  }
  if (options.z_nodes < 1) throw ConfigError("z quadrature needs at least one node");

  const auto grid = make_emission_grid(crystal, pump, options.resolution);
  const TwoPhotonModel model(crystal, pump);
  const int n_az = grid.n_azimuthal;
  const int nr = grid.n_radial;
  const int m_max = max_bessel_order;
  const int n_orders = 4 * m_max + 1;        // n in [-2M, 2M]
  const int ls_count = n_az + 2 * m_max;  // l_s in [-N/2 - M, N/2 + M)
  const auto trig = azimuth_tables(n_az);
  const auto z_rule = gauss_legendre(options.z_nodes, 0.0, crystal.length_m);

  const double w2 = pump.waist_m * pump.waist_m;
  const double q2_cut = 4.0 * envelope_exponent_cutoff(pump, options.envelope_floor) / w2;

  // i^n exp(-i n alpha)
  std::vector<std::complex<double>> order_phase(n_orders);
  for (int n = -2 * m_max; n <= 2 * m_max; ++n) {
    const std::complex<double> in = std::pow(std::complex<double>(0.0, 1.0), n);
    order_phase[n + 2 * m_max] = in * std::polar(1.0, -n * pump.walkoff_azimuth);
  }

  std::vector<std::complex<double>> amp(static_cast<std::size_t>(n_orders) * ls_count);
  auto* buf_in = fftw_alloc_complex(n_az);
  auto* buf_out = fftw_alloc_complex(n_az);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n_az, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  auto* in = reinterpret_cast<std::complex<double>*>(buf_in);
  auto* out = reinterpret_cast<std::complex<double>*>(buf_out);

  std::vector<std::complex<double>> envelope(n_az);
  std::vector<double> mismatch(n_az);
  std::vector<double> j_s(2 * m_max + 1);
  std::vector<double> j_i(2 * m_max + 1);
  std::vector<std::complex<double>> h(n_az);

  for (int a = 0; a < nr; ++a) {
    const double qa = grid.radial_nodes[a];
    for (int b = 0; b < nr; ++b) {
      const double qb = grid.radial_nodes[b];
      if ((qa - qb) * (qa - qb) > q2_cut) continue;
      bool any = false;
      for (int j = 0; j < n_az; ++j) {
        // phi_s - phi_i = 2 pi j / N with phi_i = 0
        const double qpx = qa * trig.cos[j] + qb;
        const double qpy = qa * trig.sin[j];
        const double q_pump_sq = qpx * qpx + qpy * qpy;
        const auto base = q_pump_sq > q2_cut ? std::nullopt : model.base_mismatch(qa, qb, q_pump_sq);
        if (base) {
          envelope[j] = pump_envelope(pump, qpx, qpy);
          mismatch[j] = *base;
          any = true;
        } else {
          envelope[j] = 0.0;
          mismatch[j] = 0.0;
        }
      }
      if (!any) continue;
      const double pair_weight = grid.radial_weights[a] * qa * grid.radial_weights[b] * qb;

      for (std::size_t iz = 0; iz < z_rule.nodes.size(); ++iz) {
        const double z = z_rule.nodes[iz];
        for (int j = 0; j < n_az; ++j) in[j] = envelope[j] * std::polar(1.0, mismatch[j] * z);
        fftw_execute(plan);
        // h_k with k in [-N/2, N/2), stored at k + N/2
        for (int k = 0; k < n_az; ++k) {
          const int src = k < n_az / 2 ? k + n_az / 2 : k - n_az / 2;
          h[k] = out[src] / static_cast<double>(n_az);
        }
        for (int m = -m_max; m <= m_max; ++m) {
          j_s[m + m_max] = bessel(m, qa * z * t);
          j_i[m + m_max] = bessel(m, qb * z * t);
        }
        // Orders beyond the argument die off super-exponentially; drop the
        // ones that cannot reach double precision.
        const int reach_s = active_order(j_s, m_max);
        const int reach_i = active_order(j_i, m_max);
        const double w = pair_weight * z_rule.weights[iz] / crystal.length_m;
        for (int ms = -reach_s; ms <= reach_s; ++ms) {
          for (int mi = -reach_i; mi <= reach_i; ++mi) {
            const int n = ms + mi;
            const std::complex<double> c =
                w * order_phase[n + 2 * m_max] * (j_s[ms + m_max] * j_i[mi + m_max]);
            // l_s = k + m_s
            auto* row = &amp[static_cast<std::size_t>(n + 2 * m_max) * ls_count + ms + m_max];
            for (int k = 0; k < n_az; ++k) row[k] += c * h[k];
          }
        }
      }
    }
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf_in);
  fftw_free(buf_out);

  JacobiAngerResult result;
  result.max_bessel_order = m_max;
  double total = 0.0;
  for (int n = -2 * m_max; n <= 2 * m_max; ++n) {
    double p = 0.0;
    const auto* row = &amp[static_cast<std::size_t>(n + 2 * m_max) * ls_count];
    for (int l = 0; l < ls_count; ++l) p += std::norm(row[l]);
    result.total_oam[n] = p;
    total += p;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("Bessel expansion produced an empty or non-finite state");
  }
  for (auto& [n, p] : result.total_oam) p /= total;
  return result;
}

double jacobi_anger_sideband(const CrystalConfig& crystal, const PumpConfig& pump, int order,
                             int max_bessel_order, const JacobiAngerOptions& options) {
  if (max_bessel_order < std::abs(order)) {
    throw ConfigError("Bessel truncation order " + std::to_string(max_bessel_order) +
                      " cannot reach sideband " + std::to_string(order));
  }
  return jacobi_anger_expansion(crystal, pump, max_bessel_order, options).probability(order);
}

double astigmatism_objective(const OamSpectrum& spectrum, AstigmatismObjective objective) {
  if (objective == AstigmatismObjective::TotalLeak) return f_leak(spectrum);
  double odd = 0.0;
  const int half = spectrum.n_azimuthal / 2;
  for (int n = -half; n < half; ++n) {
    if ((n - spectrum.l_tot_pump) % 2 != 0) odd += spectrum.total(n);
  }
  return odd;
}

AstigmatismResult optimize_astigmatism(const CrystalConfig& crystal, const PumpConfig& pump,
                                       double beta_max, AstigmatismObjective objective,
                                       const PipelineOptions& options, double tolerance) {
  if (!(beta_max > 0.0) || !std::isfinite(beta_max)) {
    throw ConfigError("astigmatism range must be [-b, b] with b > 0");
  }
  if (!(tolerance > 0.0)) throw ConfigError("astigmatism tolerance must be positive");
  auto spectrum_at = [&](double beta) {
    PumpConfig p = pump;
    p.astig_beta = beta;
    return compute_spectrum(crystal, p, options);
  };

  AstigmatismResult result;
  result.objective = objective;
  const auto base = spectrum_at(0.0);
  result.before = sideband_map(base);
  result.objective_before = astigmatism_objective(base, objective);

  const auto search = golden_section_minimize(
      [&](double beta) { return astigmatism_objective(spectrum_at(beta), objective); }, -beta_max,
      beta_max, tolerance);
  result.boundary = search.boundary;
  result.flat = search.flat;
  result.evaluations = search.evaluations + 1;
  result.beta_opt = search.flat ? 0.0 : search.x;

  const auto best = spectrum_at(result.beta_opt);
  result.after = sideband_map(best);
  result.objective_after = astigmatism_objective(best, objective);
  return result;
}

std::string to_string(AstigmatismObjective objective) {
  return objective == AstigmatismObjective::OddSidebands ? "odd-sidebands" : "total-leak";
}

AstigmatismObjective parse_objective(const std::string& name) {
  if (name == "odd-sidebands" || name == "OddSidebands") return AstigmatismObjective::OddSidebands;
  if (name == "total-leak" || name == "TotalLeak") return AstigmatismObjective::TotalLeak;
  throw ConfigError("unknown astigmatism objective '" + name + "'");
}

nlohmann::json crystal_to_json(const CrystalConfig& crystal) {
  const auto terms = [](const SellmeierTerms& s) {
    return nlohmann::json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}};
  };
  return {{"name", crystal.sellmeier.name},
          {"theta_deg", rad_to_deg(crystal.theta)},
          {"length_mm", crystal.length_m * 1e3},
          {"geometry", crystal.geometry == Geometry::Collinear ? "collinear" : "noncollinear"},
          {"sellmeier",
           {{"ordinary", terms(crystal.sellmeier.ordinary)},
            {"extraordinary", terms(crystal.sellmeier.extraordinary)},
            {"lambda_min_um", crystal.sellmeier.lambda_min_um},
            {"lambda_max_um", crystal.sellmeier.lambda_max_um}}}};
}

nlohmann::json pump_to_json(const PumpConfig& pump) {
  return {{"wavelength_nm", pump.lambda_um * 1e3},
          {"waist_um", pump.waist_m * 1e6},
          {"oam", pump.oam},
          {"walkoff_deg", rad_to_deg(pump.walkoff_rho)},
          {"walkoff_azimuth_deg", rad_to_deg(pump.walkoff_azimuth)},
          {"astigmatism_beta", pump.astig_beta},
          {"envelope", pump.envelope == EnvelopeMode::Isotropic ? "isotropic" : "literal"}};
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << sweep.axis << ",f_leak";
  for (int n = -kSidebandReport; n <= kSidebandReport; ++n) os << ",P_" << n;
  os << '\n';
  for (std::size_t i = 0; i < sweep.axis_values.size(); ++i) {
    os << format_double(sweep.axis_values[i]) << ',' << format_double(sweep.f_leak[i]);
    for (double p : sweep.sidebands[i]) os << ',' << format_double(p);
    os << '\n';
  }
  return os.str();
}

nlohmann::json sweep_to_json(const SweepResult& sweep) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < sweep.axis_values.size(); ++i) {
    nlohmann::json p;
    p[sweep.axis] = sweep.axis_values[i];
    p["f_leak"] = sweep.f_leak[i];
    p["crystal_length_mm"] = sweep.crystal_length_m[i] * 1e3;
    nlohmann::json sb;
    for (int n = -kSidebandReport; n <= kSidebandReport; ++n) {
      sb[std::to_string(n)] = sweep.probability(i, n);
    }
    p["total_oam"] = sb;
    points.push_back(p);
  }
  return {{"schema_version", kSchemaVersion},
          {"axis", sweep.axis},
          {"config", sweep.config},
          {"points", points}};
}

nlohmann::json fit_to_json(const ScalingFit& fit) {
  return {{"schema_version", kSchemaVersion},
          {"order", fit.order},
          {"rho_deg", fit.rho_deg},
          {"probability", fit.probability},
          {"slope", fit.slope},
          {"slope_stderr", fit.slope_stderr},
          {"intercept", fit.intercept},
          {"expected_slope", 2 * std::abs(fit.order)}};
}

std::string fit_to_csv(const ScalingFit& fit) {
  std::ostringstream os;
  os << "rho_deg,tan_rho,P_" << fit.order << '\n';
  for (std::size_t i = 0; i < fit.rho_deg.size(); ++i) {
    os << format_double(fit.rho_deg[i]) << ',' << format_double(std::tan(deg_to_rad(fit.rho_deg[i])))
       << ',' << format_double(fit.probability[i]) << '\n';
  }
  return os.str();
}

nlohmann::json astigmatism_to_json(const AstigmatismResult& result) {
  const auto to_obj = [](const std::map<int, double>& m) {
    nlohmann::json j;
    for (const auto& [n, p] : m) j[std::to_string(n)] = p;
    return j;
  };
  return {{"schema_version", kSchemaVersion},
          {"objective", to_string(result.objective)},
          {"beta_opt", result.beta_opt},
          {"objective_before", result.objective_before},
          {"objective_after", result.objective_after},
          {"before", to_obj(result.before)},
          {"after", to_obj(result.after)},
          {"boundary_hit", result.boundary},
          {"flat", result.flat},
          {"evaluations", result.evaluations}};
}

}  // namespace oamwalk
