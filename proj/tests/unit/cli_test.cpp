#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "kmsent/cli/app.hpp"

using namespace kmsent::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kmsent_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunOptions quiet_in(const fs::path& dir) {
  RunOptions o;
  o.out_dir = dir;
  o.quiet = true;
  return o;
}

}  // namespace

TEST(Cli, RelentEqualGeneratorsAtTimeZero) {
  const fs::path dir = fresh_dir("relent");
  RunConfig cfg = parse_config("[K1]\ncoeffs = [0.7]\n[K3]\ncoeffs = [0.7]\n[time]\nt = [0]\n");
  std::ostringstream err;
  ASSERT_EQ(run("relent", cfg, quiet_in(dir), err), kSuccess) << err.str();
  std::istringstream csv(slurp(dir / "relent.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,static,dynamic,total,order_1\r");
  std::getline(csv, line);
  std::istringstream row(line);
  std::string cell;
  while (std::getline(row, cell, ',')) EXPECT_NEAR(std::stod(cell), 0.0, 1e-15) << line;
  EXPECT_TRUE(fs::exists(dir / "relent.json"));
}

TEST(Cli, OracleDefaultConfigPasses) {
  const fs::path dir = fresh_dir("oracle");
  std::ostringstream err;
  ASSERT_EQ(run("oracle", RunConfig{}, quiet_in(dir), err), kSuccess) << err.str();
  const std::string csv = slurp(dir / "oracle.csv");
  EXPECT_EQ(csv.find(",false"), std::string::npos);
  EXPECT_NE(csv.find(",true"), std::string::npos);
}

TEST(Cli, InvalidBetaIsAValidationError) {
  const fs::path dir = fresh_dir("beta");
  std::ostringstream err;
  EXPECT_EQ(run("relent", parse_config("[thermal]\nbeta = 0\n"), quiet_in(dir), err), kValidationError);
  EXPECT_NE(err.str().find("beta"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "relent.csv"));
}

TEST(Cli, UnknownSubcommand) {
  std::ostringstream err;
  EXPECT_EQ(run("plot", RunConfig{}, quiet_in(fresh_dir("unknown")), err), kValidationError);
}

TEST(Cli, ToleranceFailureRemovesOutputsAndNamesQuantity) {
  const fs::path dir = fresh_dir("vanhove");
  // Stale artifacts from an earlier run must not survive a failed run.
  std::ofstream(dir / "vanhove.csv") << "stale";
  std::ostringstream err;
  RunConfig cfg = parse_config("[cutoff]\nn_max = 4\ntolerance = 0.01\n");
  EXPECT_EQ(run("vanhove", cfg, quiet_in(dir), err), kToleranceFailure);
  EXPECT_NE(err.str().find("vanhove relative gap"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "vanhove.csv"));
  EXPECT_FALSE(fs::exists(dir / "vanhove.json"));
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const std::string sub : {"relent", "balance", "density", "kmscheck"}) {
    const fs::path a = fresh_dir(sub + "_a"), b = fresh_dir(sub + "_b");
    std::ostringstream err;
    RunConfig cfg = parse_config("[K1]\ncoeffs = [1.0, 0.2]\n[K2]\ncoeffs = [0.0, 0.1]\n[K3]\ncoeffs = [0.4, -0.3]\n");
    ASSERT_EQ(run(sub, cfg, quiet_in(a), err), kSuccess) << err.str();
    ASSERT_EQ(run(sub, cfg, quiet_in(b), err), kSuccess) << err.str();
    EXPECT_EQ(slurp(a / (sub + ".csv")), slurp(b / (sub + ".csv"))) << sub;
    EXPECT_EQ(slurp(a / (sub + ".json")), slurp(b / (sub + ".json"))) << sub;
  }
}

TEST(Cli, SeedOverrideChangesOracleDraws) {
  const fs::path a = fresh_dir("seed_a"), b = fresh_dir("seed_b");
  RunConfig cfg = parse_config("[oracle]\ntrials = 4\n");
  RunOptions oa = quiet_in(a), ob = quiet_in(b);
  ob.seed = 12345;
  std::ostringstream err;
  ASSERT_EQ(run("oracle", cfg, oa, err), kSuccess);
  ASSERT_EQ(run("oracle", cfg, ob, err), kSuccess);
  EXPECT_NE(slurp(a / "oracle.csv"), slurp(b / "oracle.csv"));
}

TEST(Cli, HeadersMatchDocumentedSchemas) {
  const std::map<std::string, std::string> headers{
      {"entprod", "t,entropy_production"},
      {"balance", "t,S_t,S_0,integral_E,residual"},
      {"density", "t,static_density,dynamic_density,total_density"},
      {"ness", "t,e_t,e_t_times_t"},
      {"kmscheck", "kind,sample,residual"},
  };
  for (const auto& [sub, header] : headers) {
    const fs::path dir = fresh_dir("schema_" + sub);
    std::ostringstream err;
    ASSERT_EQ(run(sub, RunConfig{}, quiet_in(dir), err), kSuccess) << sub << ": " << err.str();
    EXPECT_EQ(slurp(dir / (sub + ".csv")).substr(0, header.size() + 2), header + "\r\n") << sub;
  }
  const fs::path dir = fresh_dir("schema_vanhove");
  std::ostringstream err;
  ASSERT_EQ(run("vanhove", parse_config("[cutoff]\nn_max = 3\ntolerance = 10\n"), quiet_in(dir), err), kSuccess);
  EXPECT_EQ(slurp(dir / "vanhove.csv").substr(0, 14), "n,I_h,density\r");
}
