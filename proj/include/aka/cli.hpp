#pragma once

// akasim command line:
//   demo                honest exchange
//   attack replay       timestamp-rewriting replay
//   attack ephemeral    replay with a leaked ephemeral key
//   selftest            reduced invariant suites
//   keygen              PKG setup and key extraction to a key file
//
// Exit status: 0 on completion (and matching --expect), 1 on expectation
// mismatch or failed selftest, 2 on usage or configuration errors.

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aka/curve_file.hpp"
#include "aka/key_file.hpp"
#include "aka/report.hpp"
#include "aka/selftest.hpp"

namespace aka::cli {

enum class Command { Demo, AttackReplay, AttackEphemeral, Selftest, Keygen };
enum class Expectation { Succeeded, Defeated };

struct CliConfig {
  Command command = Command::Demo;
  Variant variant = Variant::Flawed;
  std::uint64_t seed = 1;
  std::uint64_t window = kDefaultWindow;
  std::uint64_t delay = 1000;
  std::string curve = "toy";
  std::string output;  // empty: standard output
  std::optional<Expectation> expect;
  sim::MessageOrder order = sim::MessageOrder::ServerFirst;
  sim::Direction direction = sim::Direction::ServerToClient;
  bool rewrite_timestamp = true;
  std::string id = "server-1";
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline Curve load_curve(const std::string& spec) {
  if (spec == "toy") return Curve::toy();
  return load_curve_file(spec);
}

struct Outcome {
  std::string text;
  bool succeeded = true;
  bool failed_selftest = false;
};

inline Outcome execute(const CliConfig& cfg) {
  Curve curve = load_curve(cfg.curve);
  sim::Scenario scenario{curve, cfg.seed, cfg.variant, cfg.window, cfg.delay};
  sim::AttackOptions options{cfg.rewrite_timestamp, cfg.direction};

  switch (cfg.command) {
    case Command::Demo: {
      auto result = sim::run_honest_exchange(scenario, cfg.order);
      return {sim::render(sim::to_json(result, cfg.variant, cfg.order)),
              result.server_key == result.client_key};
    }
    case Command::AttackReplay: {
      auto report = sim::run_replay_attack(scenario, options);
      return {sim::render(sim::to_json(report)), report.succeeded};
    }
    case Command::AttackEphemeral: {
      auto report = sim::run_ephemeral_compromise_attack(scenario, options);
      return {sim::render(sim::to_json(report)), report.succeeded};
    }
    case Command::Selftest: {
      auto results = selftest::run_all(curve, cfg.seed);
      sim::Json checks = sim::Json::array();
      bool all = true;
      for (const auto& r : results) {
        checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
      }
      sim::Json j;
      j["selftest"] = checks;
      j["passed"] = all;
      return {sim::render(j), all, !all};
    }
    case Command::Keygen: {
      DeterministicRng rng(cfg.seed);
      MasterKeyPair master = pkg_setup(curve, rng);
      EntityKeyPair keys = extract_key(curve, master, Identity(cfg.id), rng);
      return {format_key_file(keys), true};
    }
  }
  return {};
}

}  // namespace detail

/// Parses `args` (without the program name). On help requests or usage
/// errors, prints to `out`/`err`, sets `status` and returns nullopt.
inline std::optional<CliConfig> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                           std::ostream& err, int& status) {
  CliConfig cfg;
  CLI::App app{"Identity-based key agreement simulator", "akasim"};
  app.require_subcommand(1);

  std::string variant = "flawed";
  std::string expect;
  std::string order = "server-first";
  std::string direction = "server-to-client";
  bool no_rewrite = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--variant", variant, "flawed or fixed")
        ->check(CLI::IsMember({"flawed", "fixed"}, CLI::ignore_case));
    sub->add_option("--seed", cfg.seed, "seed for every random choice");
    sub->add_option("--window", cfg.window, "freshness window in ticks");
    sub->add_option("--delay", cfg.delay, "ticks between interception and replay");
    sub->add_option("--curve", cfg.curve, "'toy' or a curve parameter file");
    sub->add_option("--output", cfg.output, "write the report to this file");
    sub->add_option("--expect", expect, "succeeded or defeated")
        ->check(CLI::IsMember({"succeeded", "defeated"}, CLI::ignore_case));
  };

  auto* demo = app.add_subcommand("demo", "run an honest exchange");
  common(demo);
  demo->add_option("--order", order, "server-first, client-first or parallel")
      ->check(CLI::IsMember({"server-first", "client-first", "parallel"}));

  auto* attack = app.add_subcommand("attack", "run an attack scenario");
  attack->require_subcommand(1);
  auto* replay = attack->add_subcommand("replay", "replay with a rewritten timestamp");
  auto* ephemeral = attack->add_subcommand("ephemeral", "replay with a compromised ephemeral key");
  for (auto* sub : {replay, ephemeral}) {
    common(sub);
    sub->add_option("--direction", direction, "server-to-client or client-to-server")
        ->check(CLI::IsMember({"server-to-client", "client-to-server"}));
    sub->add_flag("--no-rewrite", no_rewrite, "replay the captured bytes unmodified");
  }

  auto* self = app.add_subcommand("selftest", "run the invariant suites");
  common(self);

  auto* keygen = app.add_subcommand("keygen", "PKG setup and key extraction");
  common(keygen);
  keygen->add_option("--id", cfg.id, "identity to extract a key for");

  std::vector<std::string> argv_storage{"akasim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    status = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    return std::nullopt;
  }

  if (demo->parsed()) cfg.command = Command::Demo;
  if (replay->parsed()) cfg.command = Command::AttackReplay;
  if (ephemeral->parsed()) cfg.command = Command::AttackEphemeral;
  if (self->parsed()) cfg.command = Command::Selftest;
  if (keygen->parsed()) cfg.command = Command::Keygen;

  cfg.variant = CLI::detail::to_lower(variant) == "fixed" ? Variant::Fixed : Variant::Flawed;
  if (!expect.empty()) {
    cfg.expect = CLI::detail::to_lower(expect) == "succeeded" ? Expectation::Succeeded : Expectation::Defeated;
  }
  if (order == "client-first") cfg.order = sim::MessageOrder::ClientFirst;
  if (order == "parallel") cfg.order = sim::MessageOrder::Parallel;
  if (direction == "client-to-server") cfg.direction = sim::Direction::ClientToServer;
  cfg.rewrite_timestamp = !no_rewrite;
  return cfg;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int status = kExitOk;
  auto parsed = parse_args(args, out, err, status);
  if (!parsed) return status;
  const CliConfig& cfg = *parsed;

  detail::Outcome outcome;
  try {
    outcome = detail::execute(cfg);
  } catch (const Error& e) {
    err << "akasim: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.output.empty()) {
    out << outcome.text;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file || !(file << outcome.text)) {
      err << "akasim: cannot write '" << cfg.output << "'\n";
      return kExitUsage;
    }
  }

  if (outcome.failed_selftest) return kExitMismatch;
  if (cfg.expect) {
    bool wanted = *cfg.expect == Expectation::Succeeded;
    if (wanted != outcome.succeeded) {
      err << "akasim: outcome " << (outcome.succeeded ? "SUCCEEDED" : "DEFEATED")
          << " does not match --expect\n";
      return kExitMismatch;
    }
  }
  return kExitOk;
}

}  // namespace aka::cli
