#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cubictheta/cli.hpp"

using namespace cubictheta;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args, bool use_cache = false) {
  if (!use_cache) args.push_back("--no-cache");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, VerifyRangeJsonExitCodeMatchesVerdicts) {
  const auto r = run_cli({"verify", "--range", "2", "1000", "--precision", "1000", "--format", "json"});
  const json arr = json::parse(r.out);
  ASSERT_TRUE(arr.is_array());
  i64 fundamentals = 0;
  for (i64 d = 2; d <= 1000; ++d) fundamentals += is_fundamental(d);
  EXPECT_EQ(static_cast<i64>(arr.size()), fundamentals);
  bool all_pass = true;
  for (const auto& rep : arr) all_pass = all_pass && rep["verdict"] == "PASS";
  EXPECT_EQ(r.code, all_pass ? 0 : 1);
}

TEST(Cli, VerifySingleDiscriminantPasses) {
  const auto r = run_cli({"verify", "--disc", "229", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json arr = json::parse(r.out);
  ASSERT_EQ(arr.size(), 1u);
  EXPECT_EQ(arr[0]["count"], 1);
  EXPECT_NE(r.err.find("d=229 count=1 PASS"), std::string::npos);
}

TEST(Cli, VerifyFailureExitsOne) {
  const auto r = run_cli({"verify", "--disc", "29", "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)[0]["verdict"], "FAIL");
}

TEST(Cli, ThetaJson) {
  const auto r = run_cli({"theta", "--disc", "229", "--precision", "50", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const json arr = json::parse(r.out);
  ASSERT_EQ(arr.size(), 1u);
  const auto t = theta_from_json(arr[0]);
  EXPECT_EQ(t.precision, 50);
  EXPECT_EQ(t.character, -687);
  EXPECT_EQ(t.level, 687);
  EXPECT_EQ(t.coeffs.size(), 51u);
  EXPECT_EQ(t.coeffs[0], 1);
}

TEST(Cli, NonFundamentalIsUsageError) {
  const auto r = run_cli({"verify", "--disc", "9"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("9 is not a fundamental discriminant"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"verify"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--disc", "229", "--range", "2", "10"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--disc", "229", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--disc", "229", "--precision", "0"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--range", "10", "5"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  const auto bad = run_cli({"verify", "--bogus", "1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("--bogus"), std::string::npos);
}

TEST(Cli, CsvParsesBack) {
  const auto r = run_cli({"verify", "--range", "200", "400", "--format", "csv"});
  const auto rows = lines(r.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], "d,d3,count,h,r3,injective,independent,witness_primes,millis");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream in(rows[i]);
    std::vector<std::string> cols;
    for (std::string c; std::getline(in, c, ',');) cols.push_back(c);
    if (rows[i].back() == ',') cols.push_back("");
    ASSERT_EQ(cols.size(), 9u) << rows[i];
    EXPECT_TRUE(is_fundamental(std::stoll(cols[0])));
    EXPECT_EQ(std::stoll(cols[1]), three_reflection(std::stoll(cols[0])));
  }
}

TEST(Cli, ClassGroupAndEnumerate) {
  auto r = run_cli({"classgroup", "--disc", "-23", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j[0]["h"], 3);
  EXPECT_EQ(j[0]["r3"], 1);

  r = run_cli({"classgroup", "--range", "-30", "-3", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).front(), "disc,h,r3,forms");

  r = run_cli({"enumerate", "--disc", "229", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j[0]["fields"], json::parse("[[1,0,-4,-1]]"));

  r = run_cli({"enumerate", "--range", "220", "260", "--format", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d = 229: 1 cubic field(s)"), std::string::npos);
}

TEST(Cli, TextFormatShowsFormsAndFingerprints) {
  const auto r = run_cli({"verify", "--disc", "229"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("t_K = (4, 1, 43)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("theta = 1 + 2 q^4"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[ALL PASS]"), std::string::npos);
}

TEST(Cli, CacheDirectoryFromEnvironment) {
  const fs::path dir = fs::temp_directory_path() / ("cubictheta_cli_env_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv("CUBICTHETA_CACHE_DIR", dir.c_str(), 1);
  const auto r = run_cli({"verify", "--disc", "229", "--format", "json"}, true);
  ::unsetenv("CUBICTHETA_CACHE_DIR");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir / "fields.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "classgroup.jsonl"));
  // Explicit flag wins over the environment.
  const fs::path flag_dir = dir / "explicit";
  const auto r2 = run_cli({"enumerate", "--disc", "229", "--cache-dir", flag_dir.string()}, true);
  EXPECT_EQ(r2.code, 0);
  EXPECT_TRUE(fs::exists(flag_dir / "fields.jsonl"));
  fs::remove_all(dir);
}

TEST(Cli, BinaryExitCodes) {
  const std::string exe = CUBICTHETA_CLI_PATH;
  auto status = [&](const std::string& args) {
    int raw = std::system((exe + " " + args + " --no-cache >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("verify --disc 229"), 0);
  EXPECT_EQ(status("verify --disc 29"), 1);
  EXPECT_EQ(status("verify --disc 9"), 2);
  EXPECT_EQ(status("--help"), 0);
}
