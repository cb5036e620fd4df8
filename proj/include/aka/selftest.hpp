#pragma once

// Reduced-size versions of the invariant suites, runnable from the CLI
// against any curve.

#include <functional>
#include <string>
#include <vector>

#include "aka/report.hpp"

namespace aka::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

/// All points when the group is small enough to list, else a sample of
/// multiples of the generator.
inline std::vector<Point> sample_points(const Curve& curve, std::uint64_t seed) {
  std::vector<Point> points;
  if (curve.order() <= 512) {
    Point acc;
    for (Integer k = 0; k < curve.order(); ++k) {
      points.push_back(acc);
      acc = curve.add(acc, curve.generator());
    }
    return points;
  }
  DeterministicRng rng(seed);
  points.push_back(Point::identity());
  for (int i = 0; i < 12; ++i) {
    points.push_back(curve.multiply_generator(random_nonzero_scalar(curve, rng)));
  }
  return points;
}

inline CheckResult group_laws(const Curve& curve, std::uint64_t seed) {
  auto points = sample_points(curve, seed);
  for (const auto& u : points) {
    for (const auto& v : points) {
      if (curve.add(u, v) != curve.add(v, u)) return {"group_laws", false, "addition not commutative"};
      for (const auto& w : points) {
        if (curve.add(curve.add(u, v), w) != curve.add(u, curve.add(v, w))) {
          return {"group_laws", false, "addition not associative"};
        }
      }
    }
    Point acc;
    Integer limit = curve.order() <= 512 ? 2 * curve.order() : Integer(40);
    for (Integer k = 0; k < limit; ++k) {
      if (curve.multiply(k, u) != acc) return {"group_laws", false, "scalar_mul differs from repeated addition"};
      acc = curve.add(acc, u);
    }
  }
  const Point& g = curve.generator();
  if (!curve.multiply(curve.order(), g).is_identity()) return {"group_laws", false, "q*gen is not the identity"};
  if (curve.multiply(curve.order() - 1, g) != curve.negate(g)) return {"group_laws", false, "(q-1)*gen != -gen"};
  return {"group_laws", true, std::to_string(points.size()) + " points"};
}

inline CheckResult point_codec(const Curve& curve, std::uint64_t seed) {
  for (const auto& u : sample_points(curve, seed)) {
    if (curve.decode_point(curve.encode_point(u)) != u) return {"point_codec", false, "round trip mismatch"};
  }
  return {"point_codec", true, ""};
}

inline CheckResult signatures(const Curve& curve, std::uint64_t seed, int instances) {
  for (Variant variant : {Variant::Flawed, Variant::Fixed}) {
    for (int i = 0; i < instances; ++i) {
      DeterministicRng rng(seed + static_cast<std::uint64_t>(i));
      auto world = sim::setup_world(curve, rng);
      Point Y = curve.multiply_generator(random_nonzero_scalar(curve, rng));
      Timestamp t{rng.next_u64() % 100000};
      auto [sig, X] = sign(curve, world.server_keys, world.client_keys.id, Y, t, variant, rng);
      if (recover_commitment(curve, sig, world.server_keys.id, world.master.public_key) != X) {
        return {"signatures", false, "recovered commitment differs from X"};
      }
      if (!verify_signature(curve, sig, world.server_keys.id, world.client_keys.id, Y, t,
                            world.master.public_key, variant)) {
        return {"signatures", false, "honest signature rejected"};
      }
    }
  }
  return {"signatures", true, std::to_string(2 * instances) + " instances"};
}

inline CheckResult key_agreement(const Curve& curve, std::uint64_t seed, int seeds) {
  for (Variant variant : {Variant::Flawed, Variant::Fixed}) {
    for (auto order : {sim::MessageOrder::ServerFirst, sim::MessageOrder::ClientFirst, sim::MessageOrder::Parallel}) {
      for (int i = 0; i < seeds; ++i) {
        sim::Scenario s{curve, seed + static_cast<std::uint64_t>(i), variant};
        auto r = sim::run_honest_exchange(s, order);
        if (r.server_key != r.client_key) return {"key_agreement", false, "session keys differ"};
      }
    }
  }
  return {"key_agreement", true, std::to_string(6 * seeds) + " exchanges"};
}

inline CheckResult attack_matrix(const Curve& curve, std::uint64_t seed, int seeds) {
  for (int i = 0; i < seeds; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    sim::Scenario flawed{curve, s, Variant::Flawed};
    sim::Scenario fixed{curve, s, Variant::Fixed};
    if (!sim::run_replay_attack(flawed).succeeded) return {"attack_matrix", false, "replay failed on FLAWED"};
    auto r = sim::run_replay_attack(fixed);
    if (r.succeeded || r.reason != Rejection::BadSignature) {
      return {"attack_matrix", false, "replay not rejected as BadSignature on FIXED"};
    }
    r = sim::run_replay_attack(fixed, {.rewrite_timestamp = false});
    if (r.succeeded || r.reason != Rejection::StaleTimestamp) {
      return {"attack_matrix", false, "unmodified replay not stale on FIXED"};
    }
    if (!sim::run_ephemeral_compromise_attack(flawed).keys_match) {
      return {"attack_matrix", false, "compromise keys differ on FLAWED"};
    }
    r = sim::run_ephemeral_compromise_attack(fixed);
    if (r.succeeded || r.victim_key.has_value()) {
      return {"attack_matrix", false, "compromise not defeated on FIXED"};
    }
  }
  return {"attack_matrix", true, std::to_string(seeds) + " seeds"};
}

inline CheckResult binding(const Curve& curve, std::uint64_t seed, int messages) {
  for (Variant variant : {Variant::Flawed, Variant::Fixed}) {
    for (int i = 0; i < messages; ++i) {
      DeterministicRng rng(seed + static_cast<std::uint64_t>(i));
      auto world = sim::setup_world(curve, rng);
      Timestamp now{500};
      auto built = build_message(curve, world.server_keys, world.client_keys.id, now, variant, rng);
      Bytes wire = encode_message(curve, built.message);
      if (!accepted(verify_wire(curve, wire, world.client_keys.id, world.master.public_key, now,
                                kDefaultWindow, variant))) {
        return {"binding", false, "honest message rejected"};
      }
      for (WireField f : kAllWireFields) {
        FieldSpan span = locate_field(wire, f);
        std::size_t index = f == WireField::Timestamp ? 7 : rng.next_u64() % span.length;
        Bytes tampered = tamper_field(wire, f, index, 0x01);
        bool ok = accepted(verify_wire(curve, tampered, world.client_keys.id, world.master.public_key,
                                       now, kDefaultWindow, variant));
        bool expect_ok = f == WireField::Timestamp && variant == Variant::Flawed;
        if (ok != expect_ok) {
          return {"binding", false, "unexpected verdict after mutating " + std::string(to_string(f))};
        }
      }
      for (std::size_t len = 0; len < wire.size(); ++len) {
        try {
          decode_message(curve, ByteView(wire).first(len));
          return {"binding", false, "truncated message decoded"};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::MalformedMessage) return {"binding", false, "truncation not MalformedMessage"};
        }
      }
      if (decode_message(curve, wire) != built.message) return {"binding", false, "message round trip mismatch"};
    }
  }
  return {"binding", true, std::to_string(2 * messages) + " messages"};
}

}  // namespace detail

inline std::vector<CheckResult> run_all(const Curve& curve, std::uint64_t seed) {
  std::vector<std::function<CheckResult()>> checks = {
      [&] { return detail::group_laws(curve, seed); },
      [&] { return detail::point_codec(curve, seed); },
      [&] { return detail::signatures(curve, seed, 100); },
      [&] { return detail::key_agreement(curve, seed, 5); },
      [&] { return detail::attack_matrix(curve, seed, 10); },
      [&] { return detail::binding(curve, seed, 10); },
  };
  std::vector<CheckResult> results;
  for (auto& check : checks) {
    try {
      results.push_back(check());
    } catch (const std::exception& e) {
      results.push_back({"exception", false, e.what()});
    }
  }
  return results;
}

}  // namespace aka::selftest
