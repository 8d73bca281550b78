#include <gtest/gtest.h>

#include "kmsent/cli/config.hpp"

using namespace kmsent;
using namespace kmsent::cli;

TEST(Config, DefaultsAreValid) { EXPECT_NO_THROW(RunConfig{}.validate()); }

TEST(Config, ParsesAllSections) {
  const RunConfig cfg = parse_config(R"(
# comment line
[thermal]
beta = 2.0   # trailing comment
mass = 0.5
lambda_order = 3

[K1]
coeffs = [1.0, -0.5]
amplitude = 1.5
width = 0.8
[K2]
coeffs = [0.0, 0.0]
amplitude = 1.5
width = 0.8
[K3]
coeffs = [0.25, 1e-1]
amplitude = 1.5
width = 0.8

[grid]
intervals = 4096
half_width = 12.5

[time]
t_min = 0.0
t_max = 2.0
t_steps = 4

[cutoff]
n_max = 6
ramp = "sharp"
tolerance = 0.5

[ness]
t_min = 5
t_max = 50
samples = 7

[oracle]
dim = [2, 5]
trials = 3
seed = 99
t_min = -1
t_max = 1

[balance]
tolerance = 1e-7
)");
  EXPECT_EQ(cfg.thermal.beta, 2.0);
  EXPECT_EQ(cfg.thermal.mass, 0.5);
  EXPECT_EQ(cfg.thermal.lambda_order, 3);
  EXPECT_EQ(cfg.k1.coeffs, (std::vector<double>{1.0, -0.5}));
  EXPECT_EQ(cfg.k3.coeffs, (std::vector<double>{0.25, 0.1}));
  EXPECT_EQ(cfg.k1.amplitude, 1.5);
  EXPECT_EQ(cfg.grid.intervals, 4096u);
  EXPECT_EQ(cfg.grid.half_width, 12.5);
  EXPECT_EQ(cfg.times, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
  EXPECT_EQ(cfg.cutoff.n_max, 6);
  EXPECT_EQ(cfg.cutoff.ramp, RampKind::sharp);
  EXPECT_EQ(cfg.ness.samples, 7);
  EXPECT_EQ(cfg.oracle.dims, (std::vector<int>{2, 5}));
  EXPECT_EQ(cfg.oracle.seed, 99u);
  EXPECT_EQ(cfg.balance.tolerance, 1e-7);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ExplicitTimeList) {
  const RunConfig cfg = parse_config("[time]\nt = [0, 1.5, -2]\n");
  EXPECT_EQ(cfg.times, (std::vector<double>{0.0, 1.5, -2.0}));
}

TEST(Config, StrictParsing) {
  EXPECT_THROW(parse_config("[thermal]\nbeta = 1\ntemperature = 3\n"), configuration_error);
  EXPECT_THROW(parse_config("[physics]\nbeta = 1\n"), configuration_error);
  EXPECT_THROW(parse_config("[thermal]\nbeta = one\n"), configuration_error);
  EXPECT_THROW(parse_config("[thermal]\nbeta = 1.0x\n"), configuration_error);
  EXPECT_THROW(parse_config("[K1]\ncoeffs = 1.0, 2.0\n"), configuration_error);
  EXPECT_THROW(parse_config("[K1]\ncoeffs = [1.0,,2.0]\n"), configuration_error);
  EXPECT_THROW(parse_config("[cutoff]\nramp = \"linear\"\n"), configuration_error);
  EXPECT_THROW(parse_config("[time]\nt_min = 0\n"), configuration_error);
  EXPECT_THROW(parse_config("beta = 1\n"), configuration_error);
  EXPECT_THROW(parse_config("[thermal]\nbeta = 1\nbeta = 2\n"), configuration_error);
}

TEST(Config, ValidationNamesThePrecondition) {
  RunConfig cfg = parse_config("[thermal]\nbeta = 0\n");
  try {
    cfg.validate();
    FAIL() << "expected a configuration_error";
  } catch (const configuration_error& e) {
    EXPECT_NE(std::string(e.what()).find("thermal.beta"), std::string::npos);
  }
  cfg = parse_config("[K3]\nwidth = 2.0\n");
  EXPECT_THROW(cfg.validate(), configuration_error);
  cfg = parse_config("[K1]\ncoeffs = [1, 2]\n");
  EXPECT_THROW(cfg.validate(), configuration_error);
  cfg = parse_config("[thermal]\nmass = 0\n");
  EXPECT_THROW(cfg.validate(), configuration_error);
  cfg = parse_config("[oracle]\ndim = 17\n");
  EXPECT_THROW(cfg.validate(), configuration_error);
}
