#include <gtest/gtest.h>

#include <numbers>
#include <string>

#include "gyre/config.hpp"
#include "gyre/errors.hpp"

using namespace gyre;

namespace {

std::string error_of(const std::string& doc, const std::string& over = "{}") {
  try {
    parse_config(doc, over, Experiment::gyre);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, GyreModelDefaults) {
  const ExperimentConfig c = parse_config(R"({"experiment": "gyre"})");
  EXPECT_EQ(c.experiment, Experiment::gyre);
  EXPECT_EQ(c.gyre.f0, 5e-5);
  EXPECT_EQ(c.gyre.beta, 1.875e-11);
  EXPECT_EQ(c.gyre.tau0, 0.11);
  EXPECT_EQ(c.gyre.nu, 300.0);
  EXPECT_EQ(c.gyre.rho, 1000.0);
  EXPECT_EQ(c.gyre.g_r, 0.03);
  EXPECT_EQ(c.gyre.h0, 500.0);
  EXPECT_EQ(c.gyre.width, 1e6);
  EXPECT_EQ(c.gyre.length, 2e6);
  EXPECT_EQ(c.limiter, Limiter::mc);
  EXPECT_EQ(c.snapshot_days, 30.0);
}

TEST(Config, ConvergenceDefaults) {
  const ExperimentConfig c = parse_config(R"({"experiment": "verify-convergence"})");
  EXPECT_EQ(c.ansatz.eta, 0.1);
  EXPECT_EQ(c.ansatz.epsilon, 0.9);
  EXPECT_DOUBLE_EQ(c.ansatz.omega, std::numbers::pi / 20);
  EXPECT_EQ(c.ansatz.reynolds, 100.0);
  EXPECT_EQ(c.ansatz.rossby, 0.1);
  EXPECT_EQ(c.ansatz.froude, 2.0);
  EXPECT_EQ(c.limiter, Limiter::none);
  EXPECT_EQ(c.splitting, Splitting::strang);
  EXPECT_EQ(c.base_dt, 0.025);
}

TEST(Config, FallbackExperimentAndMissingExperiment) {
  EXPECT_EQ(parse_config("{}", "{}", Experiment::tracer).experiment, Experiment::tracer);
  try {
    parse_config("{}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("experiment"), std::string::npos);
  }
}

TEST(Config, OverridesWinOverFile) {
  const ExperimentConfig c =
      parse_config(R"({"experiment": "gyre", "dx": "20km", "gyre": {"nu": 100}})",
                   R"({"dx": 40000, "limiter": "minmod"})");
  EXPECT_EQ(c.dx, 40000.0);
  EXPECT_EQ(c.gyre.nu, 100.0);
  EXPECT_EQ(c.limiter, Limiter::minmod);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_NE(error_of(R"({"dxx": 1})").find("dxx"), std::string::npos);
  EXPECT_NE(error_of(R"({"gyre": {"tau": 1}})").find("gyre.tau"), std::string::npos);
  EXPECT_NE(error_of(R"({"dx": "40 furlongs"})").find("dx"), std::string::npos);
  EXPECT_NE(error_of(R"({"limiter": "vanleer"})").find("limiter"), std::string::npos);
  EXPECT_NE(error_of(R"({"years": "one"})").find("years"), std::string::npos);
  EXPECT_NE(error_of(R"({"circles": [{"xc": 1, "yc": 2}]})").find("circles.r"), std::string::npos);
  EXPECT_NE(error_of("{}", R"({"workers": 0})").find("workers"), std::string::npos);
  EXPECT_NE(error_of("[1, 2]").find("config"), std::string::npos);
  EXPECT_NE(error_of("{not json").find("config"), std::string::npos);
}

TEST(Config, DtAndCflConflict) {
  const std::string msg = error_of(R"({"dt": 600, "cfl": 0.5})");
  EXPECT_NE(msg.find("dt"), std::string::npos);
  EXPECT_NE(msg.find("cfl"), std::string::npos);
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c = parse_config(
      R"({"experiment": "tracer", "seed": 17, "circles": [{"xc": "100km", "yc": 2e5, "r": 5e4}],
          "distribution": "truncated-gaussian", "dt": 720, "gyre": {"beta_origin": "1000 km"}})");
  const ExperimentConfig back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(back.seed, 17u);
  ASSERT_EQ(back.circles.size(), 1u);
  EXPECT_EQ(back.circles[0].xc, 1e5);
  EXPECT_EQ(*back.gyre.beta_origin, 1e6);
  EXPECT_EQ(back.distribution, TracerDistribution::truncated_gaussian);
}

TEST(Config, LengthUnits) {
  EXPECT_EQ(parse_length("40km"), 40000.0);
  EXPECT_EQ(parse_length("500 m"), 500.0);
  EXPECT_EQ(parse_length("2000"), 2000.0);
  EXPECT_EQ(parse_length(" 2.5 km "), 2500.0);
  EXPECT_THROW(parse_length("km"), ConfigError);
  EXPECT_THROW(parse_length("3 mi"), ConfigError);
}

TEST(Config, ExperimentNames) {
  for (Experiment e : {Experiment::verify_convergence, Experiment::verify_eta,
                       Experiment::gyre, Experiment::tracer})
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  EXPECT_THROW(parse_experiment("spinup"), ConfigError);
}
