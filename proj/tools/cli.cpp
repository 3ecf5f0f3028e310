#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oamwalk/analysis.hpp"
#include "oamwalk/error.hpp"
#include "oamwalk/farfield.hpp"
#include "oamwalk/serialize.hpp"
#include "oamwalk/units.hpp"
#include "run_config.hpp"

namespace oamwalk::cli {
namespace {

namespace fs = std::filesystem;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

struct Outputs {
  const RunConfig& config;
  std::string command;

  fs::path path(const std::string& stem, const std::string& ext) const {
    return fs::path(config.output_directory) / (stem + "." + ext);
  }
  void json(const std::string& stem, nlohmann::json result) const {
    if (!config.wants("json")) return;
    auto doc = snapshot(config);
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["result"] = std::move(result);
    write_json_file(path(stem, "json"), doc);
  }
  void csv(const std::string& stem, const std::string& text) const {
    if (config.wants("csv")) write_text_file(path(stem, "csv"), text);
  }
};

nlohmann::json sidebands_json(const OamSpectrum& spec, int n_max) {
  nlohmann::json j;
  for (const auto& [n, p] : total_oam_distribution(spec, n_max)) j[std::to_string(n)] = p;
  return j;
}

int total_oam_reach(const OamSpectrum& spec) {
  return std::min(spec.n_azimuthal / 2 - 1, 2 * spec.l_max);
}

std::string angle_summary(const RunConfig& c) {
  return "theta = " + fixed(c.theta_deg, 4) + " deg, rho = " + fixed(c.walkoff_deg, 4) + " deg";
}

std::string cmd_phase_match(const RunConfig& c, const Outputs& o) {
  const double n_o = refractive_index(c.crystal.sellmeier, Polarization::Ordinary,
                                      2.0 * c.pump.lambda_um);
  const double n_e = index_e_at_angle(c.crystal.sellmeier, c.crystal.theta, c.pump.lambda_um);
  nlohmann::json r = {{"theta_deg", c.theta_deg},
                      {"theta_auto", c.theta_auto},
                      {"n_signal_ordinary", n_o},
                      {"n_pump_extraordinary", n_e}};
  if (auto q0 = phase_matched_ring_radius(c.crystal.sellmeier, c.crystal.theta, c.pump.lambda_um)) {
    r["ring_radius_per_m"] = *q0;
  }
  o.json("phase_match", r);
  return "phase-match: theta = " + fixed(c.theta_deg, 4) + " deg (" + c.crystal_name + ", " +
         fixed(c.wavelength_nm, 1) + " nm, " + c.geometry + ")";
}

std::string cmd_walkoff(const RunConfig& c, const Outputs& o) {
  const double rho = walkoff_angle(c.crystal.sellmeier, c.crystal.theta, c.pump.lambda_um);
  const double rho_deg = rad_to_deg(rho);
  o.json("walkoff", {{"theta_deg", c.theta_deg},
                     {"walkoff_deg", rho_deg},
                     {"walkoff_rad", rho},
                     {"relation", "n_e tan(rho) = -d n_e / d theta"}});
  return "walkoff: rho = " + fixed(rho_deg, 4) + " deg at theta = " + fixed(c.theta_deg, 4) +
         " deg";
}

std::string cmd_spectrum(const RunConfig& c, const Outputs& o) {
  const auto spec = compute_spectrum(c.crystal, c.pump, c.pipeline);
  o.json("spectrum", spectrum_to_json(spec));
  o.csv("spectrum", spectrum_to_csv(spec));
  return "spectrum: f_leak = " + sci(f_leak(spec)) + ", " + angle_summary(c);
}

std::string cmd_total_oam(const RunConfig& c, const Outputs& o) {
  const auto spec = compute_spectrum(c.crystal, c.pump, c.pipeline);
  const int reach = total_oam_reach(spec);
  std::ostringstream csv;
  csv << "n,P\n";
  for (const auto& [n, p] : total_oam_distribution(spec, reach)) {
    csv << n << ',' << format_double(p) << '\n';
  }
  o.json("total_oam", {{"l_tot_pump", spec.l_tot_pump},
                       {"f_leak", f_leak(spec)},
                       {"total_oam", sidebands_json(spec, reach)}});
  o.csv("total_oam", csv.str());
  return "total-oam: P(l_p) = " + sci(spec.total(spec.l_tot_pump)) + ", P(l_p+1) = " +
         sci(spec.total(spec.l_tot_pump + 1)) + ", " + angle_summary(c);
}

std::string cmd_farfield(const RunConfig& c, const Outputs& o) {
  const auto grid = make_emission_grid(c.crystal, c.pump, c.pipeline.resolution);
  KernelOptions k;
  k.threads = c.threads;
  k.envelope_floor = c.envelope_floor;
  const auto map = signal_intensity(c.crystal, c.pump, grid, k);
  o.json("farfield", intensity_metadata(map));
  o.csv("farfield", intensity_to_csv(map));
  return "farfield: peak at q = " + sci(map.peak_q) + " 1/m, centroid = (" +
         sci(map.centroid_x_normalized()) + ", " + sci(map.centroid_y_normalized()) + ") / w_p";
}

std::string sweep_summary(const SweepResult& s) {
  return std::to_string(s.axis_values.size()) + " points, f_leak " + sci(s.f_leak.front()) +
         " .. " + sci(s.f_leak.back());
}

std::string cmd_sweep_focus(const RunConfig& c, const Outputs& o) {
  const auto sweep = sweep_focusing(c.crystal, c.pump, c.focusing, c.pipeline);
  o.json("sweep_focus", sweep_to_json(sweep));
  o.csv("sweep_focus", sweep_to_csv(sweep));
  return "sweep-focus: " + sweep_summary(sweep) + ", rho = " + fixed(c.walkoff_deg, 4) + " deg";
}

std::string cmd_sweep_walkoff(const RunConfig& c, const Outputs& o) {
  const auto sweep = sweep_walkoff(c.crystal, c.pump, c.rho_deg, c.pipeline);
  o.json("sweep_walkoff", sweep_to_json(sweep));
  o.csv("sweep_walkoff", sweep_to_csv(sweep));
  return "sweep-walkoff: " + sweep_summary(sweep);
}

std::string cmd_fit_scaling(const RunConfig& c, const Outputs& o) {
  const auto sweep = sweep_walkoff(c.crystal, c.pump, c.rho_deg, c.pipeline);
  nlohmann::json fits = nlohmann::json::array();
  std::ostringstream csv;
  csv << "order,slope,slope_stderr,points,expected_slope\n";
  std::string summary = "fit-scaling:";
  for (int order : c.fit_orders) {
    const auto fit = fit_scaling_law(sweep, order);
    fits.push_back(fit_to_json(fit));
    csv << order << ',' << format_double(fit.slope) << ',' << format_double(fit.slope_stderr)
        << ',' << fit.rho_deg.size() << ',' << 2 * std::abs(order) << '\n';
    summary += " n=" + std::to_string(order) + " slope " + fixed(fit.slope, 3) + " +- " +
               fixed(fit.slope_stderr, 3) + ";";
  }
  o.json("fit_scaling", {{"sweep", sweep_to_json(sweep)}, {"fits", fits}});
  o.csv("fit_scaling", csv.str());
  o.csv("fit_scaling_sweep", sweep_to_csv(sweep));
  summary.pop_back();
  return summary;
}

std::string cmd_optimize_astig(const RunConfig& c, const Outputs& o) {
  const auto result = optimize_astigmatism(c.crystal, c.pump, c.astig_beta_max,
                                           parse_objective(c.astig_objective), c.pipeline,
                                           c.astig_tolerance);
  std::ostringstream csv;
  csv << "n,before,after\n";
  for (const auto& [n, p] : result.before) {
    csv << n << ',' << format_double(p) << ',' << format_double(result.after.at(n)) << '\n';
  }
  o.json("optimize_astig", astigmatism_to_json(result));
  o.csv("optimize_astig", csv.str());
  std::string s = "optimize-astig: beta* = " + fixed(result.beta_opt, 4) + ", P(+-1) " +
                  sci(result.before.at(1)) + " -> " + sci(result.after.at(1)) + ", P(+-2) " +
                  sci(result.before.at(2)) + " -> " + sci(result.after.at(2));
  if (result.boundary) s += " [warning: minimum on the range boundary]";
  if (result.flat) s += " [objective flat]";
  return s;
}

using Command = std::string (*)(const RunConfig&, const Outputs&);

const std::vector<std::pair<std::string, std::pair<Command, std::string>>>& commands() {
  static const std::vector<std::pair<std::string, std::pair<Command, std::string>>> table = {
      {"phase-match", {cmd_phase_match, "Solve the type-I cut angle"}},
      {"walkoff", {cmd_walkoff, "Pump Poynting walk-off at the cut angle"}},
      {"spectrum", {cmd_spectrum, "Joint OAM spectrum and f_leak"}},
      {"total-oam", {cmd_total_oam, "Total-OAM distribution P(n)"}},
      {"farfield", {cmd_farfield, "Signal far-field intensity map"}},
      {"sweep-focus", {cmd_sweep_focus, "f_leak against sqrt(L / z_R)"}},
      {"sweep-walkoff", {cmd_sweep_walkoff, "Sidebands against walk-off angle"}},
      {"fit-scaling", {cmd_fit_scaling, "Log-log sideband slopes against tan(rho)"}},
      {"optimize-astig", {cmd_optimize_astig, "Golden-section search over pump astigmatism"}},
  };
  return table;
}

int report(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << nlohmann::json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}}
             .dump()
      << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pump walk-off and OAM conservation in type-I SPDC", "oamwalk"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int threads = 0;
  int pool = 0;
  bool quiet = false;
  app.add_option("-c,--config", config_path, "INI or JSON configuration (a previous output works)");
  app.add_option("-s,--set", overrides, "Override a key, e.g. --set pump.walkoff_deg=3")
      ->take_all();
  app.add_option("-o,--out", out_dir, "Output directory (default: $OAMWALK_OUTPUT_DIR or .)");
  app.add_option("-j,--threads", threads, "Threads inside one kernel evaluation");
  app.add_option("--pool", pool, "Concurrent sweep points");
  app.add_flag("-q,--quiet", quiet, "Suppress the summary line");

  std::map<const CLI::App*, Command> handlers;
  for (const auto& [name, entry] : commands()) {
    auto* sub = app.add_subcommand(name, entry.second);
    sub->fallthrough();
    handlers[sub] = entry.first;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report(err, kConfigFailure, "config", e.what());
  }

  try {
    KeyValueConfig kv;
    if (!config_path.empty()) kv = KeyValueConfig::load(config_path);
    for (const auto& o : overrides) kv.apply_override(o);
    if (!out_dir.empty()) kv.set("output.directory", out_dir);
    if (threads > 0) kv.set("run.threads", std::to_string(threads));
    if (pool > 0) kv.set("run.pool_width", std::to_string(pool));
    const auto config = resolve(kv);

    const CLI::App* chosen = app.get_subcommands().front();
    const Outputs outputs{config, chosen->get_name()};
    const std::string summary = handlers.at(chosen)(config, outputs);
    if (!quiet) out << summary << '\n';
    return kOk;
  } catch (const ConfigError& e) {
    return report(err, kConfigFailure, e.kind(), e.what());
  } catch (const ConvergenceError& e) {
    return report(err, kConvergenceFailure, e.kind(), e.what());
  } catch (const DomainError& e) {
    return report(err, kDomainFailure, e.kind(), e.what());
  } catch (const std::exception& e) {
    return report(err, kUnexpected, "unexpected", e.what());
  }
}

}  // namespace oamwalk::cli
