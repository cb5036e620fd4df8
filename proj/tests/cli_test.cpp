#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "aka/cli.hpp"

namespace aka::cli {
namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

sim::Json json_of(const Run& r) { return sim::Json::parse(r.out); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("akasim_test_" + name)).string();
}

TEST(Cli, ReplayFlawedSucceeds) {
  auto r = run({"attack", "replay", "--variant", "flawed", "--seed", "7", "--expect", "succeeded"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(json_of(r)["outcome"], "SUCCEEDED");
}

TEST(Cli, ReplayFixedDefeated) {
  auto r = run({"attack", "replay", "--variant", "fixed", "--seed", "7", "--expect", "defeated"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_EQ(json_of(r)["outcome"], "DEFEATED");
  EXPECT_EQ(json_of(r)["reason"], "BadSignature");
}

TEST(Cli, DemoShowsEqualKeys) {
  auto r = run({"demo", "--variant", "fixed", "--seed", "3"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  auto j = json_of(r);
  EXPECT_TRUE(j["keys_match"].get<bool>());
  EXPECT_EQ(j["server_key_hex"], j["client_key_hex"]);
}

TEST(Cli, ExpectationMismatch) {
  auto r = run({"attack", "replay", "--variant", "fixed", "--expect", "succeeded"});
  EXPECT_EQ(r.status, kExitMismatch);
  EXPECT_NE(r.err.find("does not match"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).status, kExitUsage);
  EXPECT_EQ(run({"attack"}).status, kExitUsage);
  EXPECT_EQ(run({"demo", "--variant", "other"}).status, kExitUsage);
  EXPECT_EQ(run({"demo", "--seed", "abc"}).status, kExitUsage);
  EXPECT_EQ(run({"bogus"}).status, kExitUsage);
  EXPECT_EQ(run({"attack", "replay", "--delay", "5"}).status, kExitUsage);
  EXPECT_EQ(run({"demo", "--curve", "/nonexistent.curve"}).status, kExitUsage);
  EXPECT_EQ(run({"--help"}).status, kExitOk);
}

TEST(Cli, SameArgumentsSameOutput) {
  std::vector<std::string> args{"attack", "ephemeral", "--seed", "11"};
  auto a = run(args);
  auto b = run(args);
  EXPECT_EQ(a.status, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(json_of(a)["keys_match"].get<bool>());
}

TEST(Cli, OutputFileMatchesStdout) {
  std::string path = temp_path("report.json");
  auto to_stdout = run({"attack", "replay", "--seed", "4"});
  auto to_file = run({"attack", "replay", "--seed", "4", "--output", path});
  EXPECT_EQ(to_file.status, kExitOk);
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(read_text_file(path, ErrorCode::InvalidParameterFile), to_stdout.out);
  std::remove(path.c_str());
}

TEST(Cli, NoRewriteIsStale) {
  auto r = run({"attack", "replay", "--variant", "fixed", "--no-rewrite", "--expect", "defeated"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(json_of(r)["reason"], "StaleTimestamp");
}

TEST(Cli, KeygenWritesParsableKeyFile) {
  auto r = run({"keygen", "--seed", "9", "--id", "sensor-7"});
  EXPECT_EQ(r.status, kExitOk);
  auto keys = parse_key_file(Curve::toy(), r.out);
  EXPECT_EQ(keys.id.str(), "sensor-7");
  DeterministicRng rng(9);
  auto master = pkg_setup(Curve::toy(), rng);
  Scalar c = key_binding_challenge(Curve::toy(), keys.id, keys.public_key);
  EXPECT_EQ(Curve::toy().multiply_generator(keys.secret),
            Curve::toy().add(keys.public_key, Curve::toy().multiply(c, master.public_key)));
}

TEST(Cli, SelftestPasses) {
  auto r = run({"selftest", "--seed", "2"});
  EXPECT_EQ(r.status, kExitOk) << r.out;
  EXPECT_TRUE(json_of(r)["passed"].get<bool>());
}

TEST(Cli, CurveFromFile) {
  std::string secp = std::string(AKA_SOURCE_DIR) + "/data/curves/secp256k1.curve";
  auto r = run({"attack", "ephemeral", "--curve", secp, "--expect", "succeeded"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  auto fixed = run({"attack", "ephemeral", "--variant", "fixed", "--curve", secp, "--expect", "defeated"});
  EXPECT_EQ(fixed.status, kExitOk) << fixed.err;
}

}  // namespace
}  // namespace aka::cli
