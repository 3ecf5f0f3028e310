#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "oamwalk/error.hpp"
#include "oamwalk/keyvalue.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace oamwalk;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "oamwalk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oamwalk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

constexpr const char* kSmallGrid =
    "[grid]\nn_radial = 12\nn_azimuthal = 32\nl_max = 4\n"
    "[pump]\nwaist_um = 150\nwalkoff_deg = 2.5\n[crystal]\ntheta_deg = 32.914\n";

}  // namespace

TEST(RunConfig, AutoAnglesAndUnknownKeys) {
  auto kv = KeyValueConfig::parse_ini_text("[crystal]\ntheta_deg = auto\n[pump]\nwalkoff_deg = auto\n");
  const auto rc = cli::resolve(kv);
  EXPECT_NEAR(rc.theta_deg, 32.9139, 1e-4);
  EXPECT_NEAR(rc.walkoff_deg, 4.198, 1e-3);
  EXPECT_EQ(cli::snapshot(rc)["crystal"]["theta_deg"].get<double>(), rc.theta_deg);

  kv.apply_override("pump.walkof_deg=1");
  EXPECT_THROW(cli::resolve(kv), ConfigError);
  auto ignored = KeyValueConfig::parse_ini_text("[result]\nanything = 1\n");
  EXPECT_NO_THROW(cli::resolve(ignored));
  auto nc = KeyValueConfig::parse_ini_text("[crystal]\ntheta_deg = auto\ngeometry = noncollinear\n");
  EXPECT_THROW(cli::resolve(nc), ConfigError);
}

TEST_F(CliTest, PrecedenceFileThenSetThenFlags) {
  const auto cfg = write("run.ini", std::string(kSmallGrid) + "[output]\ndirectory = " +
                                        (dir_ / "from_file").string() + "\n");
  const auto r = invoke({"-c", cfg.string(), "--set", "pump.walkoff_deg=1.5", "-o",
                         (dir_ / "from_flag").string(), "-q", "spectrum"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "from_file"));
  const auto doc = nlohmann::json::parse(slurp(dir_ / "from_flag" / "spectrum.json"));
  EXPECT_EQ(doc["pump"]["walkoff_deg"].get<double>(), 1.5);
  EXPECT_EQ(doc["grid"]["n_azimuthal"].get<int>(), 32);
  EXPECT_EQ(doc["command"], "spectrum");
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, SnapshotReproducesTheRun) {
  const auto cfg = write("run.ini", kSmallGrid);
  ASSERT_EQ(invoke({"-c", cfg.string(), "-o", (dir_ / "a").string(), "-q", "total-oam"}).code, 0);
  ASSERT_EQ(invoke({"-c", (dir_ / "a" / "total_oam.json").string(), "-o", (dir_ / "b").string(),
                    "-q", "total-oam"})
                .code,
            0);
  EXPECT_EQ(slurp(dir_ / "a" / "total_oam.csv"), slurp(dir_ / "b" / "total_oam.csv"));
  auto a = nlohmann::json::parse(slurp(dir_ / "a" / "total_oam.json"));
  auto b = nlohmann::json::parse(slurp(dir_ / "b" / "total_oam.json"));
  a["output"].erase("directory");
  b["output"].erase("directory");
  EXPECT_EQ(a, b);
}

TEST_F(CliTest, ExitCodesFollowTheErrorKind) {
  const auto cfg = write("run.ini", kSmallGrid);
  const auto out = (dir_ / "o").string();
  auto r = invoke({"-c", cfg.string(), "-o", out, "--set", "pump.waist_um=abc", "spectrum"});
  EXPECT_EQ(r.code, cli::kConfigFailure);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["kind"], "config");

  r = invoke({"-c", cfg.string(), "-o", out, "--set", "pump.wavelength_nm=2000", "spectrum"});
  EXPECT_EQ(r.code, cli::kDomainFailure);

  r = invoke({"-c", cfg.string(), "-o", out, "--set", "sweep.rho_deg=1,2,3", "fit-scaling"});
  EXPECT_EQ(r.code, cli::kConvergenceFailure);

  EXPECT_EQ(invoke({}).code, cli::kConfigFailure);
  EXPECT_EQ(invoke({"-c", (dir_ / "missing.ini").string(), "spectrum"}).code,
            cli::kConfigFailure);
}

TEST_F(CliTest, PhaseMatchNeedsNoGrid) {
  const auto r = invoke({"-o", dir_.string(), "phase-match"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("32.91"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "phase_match.json"));
}
