// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aka/aka.hpp"
#include "support/golden.hpp"
#include "support/toy_oracle.hpp"

using namespace aka;

namespace {

constexpr double kGroupBudgetSeconds = 1.0;
constexpr double kSignatureBudgetSeconds = 5.0;
constexpr double kAgreementBudgetSeconds = 5.0;
constexpr int kSignatureInstances = 1000;
constexpr int kAgreementSeeds = 100;
constexpr int kAttackSeeds = 100;
constexpr int kTamperMessages = 200;
constexpr int kCodecMessages = 1000;
constexpr int kTruncationMessages = 50;
constexpr std::uint64_t kWindow = 10;
constexpr std::uint64_t kDelay = 1000;

const Curve& toy() { return Curve::toy(); }

struct Verdict {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Point from_oracle(const toy_oracle::Pt& p) { return p ? Point(p->first, p->second) : Point::identity(); }

sim::Scenario scenario(std::uint64_t seed, Variant v) {
  sim::Scenario s;
  s.seed = seed;
  s.variant = v;
  s.window = kWindow;
  s.delay = kDelay;
  return s;
}

// 1. scalar_mul equals repeated addition for k in [0, 38) over all 19 points.
Verdict group_oracle_equivalence() {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  auto points = toy_oracle::all_points();
  if (points.size() != 19) v.fail("oracle found " + std::to_string(points.size()) + " points");
  for (const auto& p : points) {
    Point u = from_oracle(p);
    Point acc;
    for (int k = 0; k < 38; ++k) {
      if (toy().multiply(Integer(k), u) != acc) v.fail("mismatch at k=" + std::to_string(k));
      if (acc != from_oracle(toy_oracle::repeated_add(k, p))) v.fail("library addition disagrees with oracle");
      acc = toy().add(acc, u);
    }
  }
  double t = seconds_since(start);
  if (t >= kGroupBudgetSeconds) v.fail("took " + std::to_string(t) + " s");
  if (v.passed) v.detail = std::to_string(points.size() * 38) + " products in " + std::to_string(t) + " s";
  return v;
}

// 2. Signature round trip and exact recovery of X.
Verdict signature_round_trip(std::string& fingerprint) {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  std::ostringstream fp;
  for (Variant variant : {Variant::Flawed, Variant::Fixed}) {
    for (int i = 1; i <= kSignatureInstances; ++i) {
      DeterministicRng rng(static_cast<std::uint64_t>(i));
      auto world = sim::setup_world(toy(), rng);
      Point Y = toy().multiply_generator(random_nonzero_scalar(toy(), rng));
      Timestamp t{static_cast<std::uint64_t>(i) * 13};
      auto [sig, X] = sign(toy(), world.server_keys, world.client_keys.id, Y, t, variant, rng);
      if (recover_commitment(toy(), sig, world.server_keys.id, world.master.public_key) != X) {
        v.fail("recovery identity broken at instance " + std::to_string(i));
      }
      if (!verify_signature(toy(), sig, world.server_keys.id, world.client_keys.id, Y, t,
                            world.master.public_key, variant)) {
        v.fail("honest signature rejected at instance " + std::to_string(i));
      }
      fp << to_hex(sig.h) << sig.mu.value() << ';';
    }
  }
  fingerprint = fp.str();
  double t = seconds_since(start);
  if (t >= kSignatureBudgetSeconds) v.fail("took " + std::to_string(t) + " s");
  if (v.passed) v.detail = std::to_string(2 * kSignatureInstances) + " instances in " + std::to_string(t) + " s";
  return v;
}

// 3. Honest exchanges agree in every order and variant.
Verdict honest_key_agreement(std::string& fingerprint) {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  std::ostringstream fp;
  int runs = 0;
  for (Variant variant : {Variant::Flawed, Variant::Fixed}) {
    for (auto order : {sim::MessageOrder::ServerFirst, sim::MessageOrder::ClientFirst, sim::MessageOrder::Parallel}) {
      for (int i = 1; i <= kAgreementSeeds; ++i) {
        auto r = sim::run_honest_exchange(scenario(static_cast<std::uint64_t>(i), variant), order);
        if (r.server_key != r.client_key) v.fail("keys differ");
        fp << sim::render(sim::to_json(r, variant, order));
        ++runs;
      }
    }
  }
  fingerprint = fp.str();
  double t = seconds_since(start);
  if (t >= kAgreementBudgetSeconds) v.fail("took " + std::to_string(t) + " s");
  if (v.passed) v.detail = std::to_string(runs) + " exchanges in " + std::to_string(t) + " s";
  return v;
}

// 4. Replay matrix.
Verdict replay_matrix(std::string& fingerprint) {
  Verdict v;
  std::ostringstream fp;
  int flawed_ok = 0, fixed_bad_sig = 0, fixed_stale = 0;
  for (int i = 1; i <= kAttackSeeds; ++i) {
    auto seed = static_cast<std::uint64_t>(i);
    auto a = sim::run_replay_attack(scenario(seed, Variant::Flawed));
    auto b = sim::run_replay_attack(scenario(seed, Variant::Fixed));
    auto c = sim::run_replay_attack(scenario(seed, Variant::Fixed), {.rewrite_timestamp = false});
    flawed_ok += a.succeeded;
    fixed_bad_sig += !b.succeeded && b.reason == Rejection::BadSignature;
    fixed_stale += !c.succeeded && c.reason == Rejection::StaleTimestamp;
    fp << sim::render(sim::to_json(a)) << sim::render(sim::to_json(b)) << sim::render(sim::to_json(c));
  }
  fingerprint = fp.str();
  v.detail = "FLAWED succeeded " + std::to_string(flawed_ok) + "/" + std::to_string(kAttackSeeds) +
             ", FIXED BadSignature " + std::to_string(fixed_bad_sig) + "/" + std::to_string(kAttackSeeds) +
             ", FIXED unmodified StaleTimestamp " + std::to_string(fixed_stale) + "/" + std::to_string(kAttackSeeds);
  v.passed = flawed_ok == kAttackSeeds && fixed_bad_sig == kAttackSeeds && fixed_stale == kAttackSeeds;
  return v;
}

// 5. Ephemeral-compromise matrix.
Verdict ephemeral_matrix(std::string& fingerprint) {
  Verdict v;
  std::ostringstream fp;
  int flawed_match = 0, fixed_defeated = 0;
  for (int i = 1; i <= kAttackSeeds; ++i) {
    auto seed = static_cast<std::uint64_t>(i);
    auto a = sim::run_ephemeral_compromise_attack(scenario(seed, Variant::Flawed));
    auto b = sim::run_ephemeral_compromise_attack(scenario(seed, Variant::Fixed));
    flawed_match += a.keys_match && a.attacker_key && a.victim_key && *a.attacker_key == *a.victim_key;
    bool derived = false;
    for (const auto& e : b.transcript.events()) derived |= e.action == sim::Action::DeriveKey;
    fixed_defeated += !b.succeeded && !b.keys_match && !b.victim_key && !derived;
    fp << sim::render(sim::to_json(a)) << sim::render(sim::to_json(b));
  }
  fingerprint = fp.str();
  v.detail = "FLAWED keys_match " + std::to_string(flawed_match) + "/" + std::to_string(kAttackSeeds) +
             ", FIXED defeated before derivation " + std::to_string(fixed_defeated) + "/" +
             std::to_string(kAttackSeeds);
  v.passed = flawed_match == kAttackSeeds && fixed_defeated == kAttackSeeds;
  return v;
}

// 6. Single-byte mutations of bound fields are rejected; t is bound only
// under FIXED.
Verdict tamper_suite(std::string& fingerprint) {
  Verdict v;
  std::ostringstream fp;
  int trials = 0;
  for (Variant variant : {Variant::Flawed, Variant::Fixed}) {
    for (int i = 1; i <= kTamperMessages; ++i) {
      DeterministicRng rng(static_cast<std::uint64_t>(i));
      auto world = sim::setup_world(toy(), rng);
      Timestamp now{5000};
      auto built = build_message(toy(), world.server_keys, world.client_keys.id, now, variant, rng);
      Bytes wire = encode_message(toy(), built.message);
      auto verdict = [&](const Bytes& w) {
        return verify_wire(toy(), w, world.client_keys.id, world.master.public_key, now, kWindow, variant);
      };
      if (!accepted(verdict(wire))) v.fail("honest message rejected");
      for (WireField f : kAllWireFields) {
        FieldSpan span = locate_field(wire, f);
        std::size_t index;
        std::uint8_t mask;
        if (f == WireField::Timestamp) {
          // Low byte, small mask: the rewritten t stays within the window.
          index = 7;
          mask = static_cast<std::uint8_t>(1 + rng.next_u64() % 8);
        } else {
          index = rng.next_u64() % span.length;
          mask = static_cast<std::uint8_t>(1 + rng.next_u64() % 255);
        }
        Bytes tampered = tamper_field(wire, f, index, mask);
        VerifyResult r = verdict(tampered);
        bool expect_accept = f == WireField::Timestamp && variant == Variant::Flawed;
        if (f == WireField::Timestamp && !check_freshness(read_wire_timestamp(tampered), now, kWindow)) {
          v.fail("timestamp mutation left the window");
        }
        if (accepted(r) != expect_accept) {
          v.fail(std::string(to_string(variant)) + " " + std::string(to_string(f)) + " mutation gave wrong verdict");
        }
        fp << accepted(r);
        ++trials;
      }
    }
  }
  fingerprint = fp.str();
  if (v.passed) v.detail = std::to_string(trials) + " mutations over " + std::to_string(2 * kTamperMessages) + " messages";
  return v;
}

// 8. Codec round trip, truncation rejection and frozen golden vectors.
Verdict wire_codec(std::string& fingerprint) {
  Verdict v;
  std::ostringstream fp;
  int truncations = 0;
  for (int i = 1; i <= kCodecMessages; ++i) {
    DeterministicRng rng(static_cast<std::uint64_t>(i));
    auto world = sim::setup_world(toy(), rng);
    Variant variant = i % 2 ? Variant::Flawed : Variant::Fixed;
    auto built = build_message(toy(), world.server_keys, world.client_keys.id,
                               Timestamp{static_cast<std::uint64_t>(i)}, variant, rng);
    Bytes wire = encode_message(toy(), built.message);
    fp << to_hex(wire) << '\n';
    if (decode_message(toy(), wire) != built.message) v.fail("round trip mismatch");
    if (i <= kTruncationMessages) {
      for (std::size_t len = 0; len < wire.size(); ++len) {
        try {
          decode_message(toy(), ByteView(wire).first(len));
          v.fail("truncation accepted");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::MalformedMessage) v.fail("truncation raised " + std::string(to_string(e.code())));
        }
        ++truncations;
      }
    }
  }

  std::string source = AKA_SOURCE_DIR;
  Curve secp = load_curve_file(source + "/data/curves/secp256k1.curve");
  std::istringstream frozen(read_text_file(source + "/tests/golden/messages.hex", ErrorCode::InvalidParameterFile));
  std::vector<std::string> lines;
  for (std::string line; std::getline(frozen, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  auto cases = golden::cases();
  if (lines.size() != cases.size()) v.fail("golden file has " + std::to_string(lines.size()) + " vectors");
  int matched = 0;
  for (std::size_t i = 0; i < cases.size() && i < lines.size(); ++i) {
    const Curve& curve = cases[i].curve == "toy" ? toy() : secp;
    if (golden::line_for(curve, cases[i]) == lines[i]) {
      ++matched;
    } else {
      v.fail("golden vector " + std::to_string(i) + " differs");
    }
  }
  fingerprint = fp.str();
  if (v.passed) {
    v.detail = std::to_string(kCodecMessages) + " round trips, " + std::to_string(truncations) +
               " truncations rejected, " + std::to_string(matched) + " golden vectors";
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict(std::string&)> run;
  };
  std::vector<Criterion> criteria = {
      {"1 group oracle equivalence", [](std::string&) { return group_oracle_equivalence(); }},
      {"2 signature round trip", signature_round_trip},
      {"3 honest key agreement", honest_key_agreement},
      {"4 replay attack matrix", replay_matrix},
      {"5 ephemeral-compromise matrix", ephemeral_matrix},
      {"6 binding/tamper suite", tamper_suite},
      {"8 wire codec", wire_codec},
  };

  int failures = 0;
  std::vector<std::string> fingerprints(criteria.size());
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].run(fingerprints[i]);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failures += !v.passed;
    std::cout << (v.passed ? "PASS" : "FAIL") << "  " << criteria[i].name << ": " << v.detail << std::endl;
  }

  // 7. Determinism: rerun every seeded criterion and compare its output.
  Verdict determinism;
  std::size_t compared = 0;
  for (std::size_t i = 1; i < criteria.size(); ++i) {
    std::string again;
    try {
      criteria[i].run(again);
    } catch (const std::exception& e) {
      determinism.fail(std::string("exception: ") + e.what());
      continue;
    }
    compared += again.size();
    if (again != fingerprints[i]) determinism.fail(std::string("rerun of '") + criteria[i].name + "' differs");
  }
  if (determinism.passed) determinism.detail = std::to_string(compared) + " bytes of reports/transcripts identical on rerun";
  failures += !determinism.passed;
  std::cout << (determinism.passed ? "PASS" : "FAIL") << "  7 determinism: " << determinism.detail << std::endl;

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
