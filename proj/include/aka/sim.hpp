#pragma once

// Script-driven simulation of a server, a client and an on-path adversary
// sharing one logical clock. Every run is a pure function of its Scenario.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aka/protocol.hpp"
#include "aka/wire.hpp"

namespace aka::sim {

inline const Identity& server_identity() {
  static const Identity id("server-1");
  return id;
}

inline const Identity& client_identity() {
  static const Identity id("sensor-7");
  return id;
}

enum class Role { Server, Client };
enum class Actor { Server, Client, Adversary };
enum class Action { Send, Intercept, RewriteTimestamp, Replay, VerifyOk, VerifyFail, DeriveKey };
enum class MessageOrder { ServerFirst, ClientFirst, Parallel };
enum class AttackKind { Replay, EphemeralCompromise };

/// SERVER_TO_CLIENT replays a server message to the client; the mirrored
/// direction impersonates the client to the server.
enum class Direction { ServerToClient, ClientToServer };

constexpr Actor actor_of(Role r) noexcept { return r == Role::Server ? Actor::Server : Actor::Client; }
constexpr Role peer_of(Role r) noexcept { return r == Role::Server ? Role::Client : Role::Server; }

constexpr std::string_view to_string(Actor a) noexcept {
  switch (a) {
    case Actor::Server: return "SERVER";
    case Actor::Client: return "CLIENT";
    case Actor::Adversary: return "ADVERSARY";
  }
  return "UNKNOWN";
}

constexpr std::string_view to_string(Action a) noexcept {
  switch (a) {
    case Action::Send: return "SEND";
    case Action::Intercept: return "INTERCEPT";
    case Action::RewriteTimestamp: return "REWRITE_TIMESTAMP";
    case Action::Replay: return "REPLAY";
    case Action::VerifyOk: return "VERIFY_OK";
    case Action::VerifyFail: return "VERIFY_FAIL";
    case Action::DeriveKey: return "DERIVE_KEY";
  }
  return "UNKNOWN";
}

constexpr std::string_view to_string(MessageOrder o) noexcept {
  switch (o) {
    case MessageOrder::ServerFirst: return "SERVER_FIRST";
    case MessageOrder::ClientFirst: return "CLIENT_FIRST";
    case MessageOrder::Parallel: return "PARALLEL";
  }
  return "UNKNOWN";
}

constexpr std::string_view to_string(AttackKind k) noexcept {
  return k == AttackKind::Replay ? "REPLAY" : "EPHEMERAL_COMPROMISE";
}

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::ServerToClient ? "SERVER_TO_CLIENT" : "CLIENT_TO_SERVER";
}

struct TranscriptEvent {
  Timestamp time;
  Actor actor;
  Action action;
  std::optional<Rejection> reason;  // set for VerifyFail only
  Bytes payload;

  /// "VERIFY_FAIL(BadSignature)" for failures, the bare action otherwise.
  std::string action_label() const {
    std::string label(to_string(action));
    if (reason) label += "(" + std::string(to_string(*reason)) + ")";
    return label;
  }

  friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

class Transcript {
 public:
  void append(TranscriptEvent event) {
    if (!events_.empty() && event.time < events_.back().time) {
      throw std::logic_error("transcript events must be appended in time order");
    }
    events_.push_back(std::move(event));
  }

  const std::vector<TranscriptEvent>& events() const noexcept { return events_; }

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::vector<TranscriptEvent> events_;
};

/// Monotone tick counter owned by the harness.
class LogicalClock {
 public:
  explicit LogicalClock(Timestamp start = {}) : now_(start) {}

  Timestamp now() const noexcept { return now_; }
  void advance(std::uint64_t ticks) { now_.ticks += ticks; }

 private:
  Timestamp now_;
};

struct Scenario {
  Curve curve = Curve::toy();
  std::uint64_t seed = 1;
  Variant variant = Variant::Flawed;
  std::uint64_t window = kDefaultWindow;
  std::uint64_t delay = 1000;
};

/// One honest participant. A party only ever sees wire bytes from outside.
class Party {
 public:
  Party(Role role, EntityKeyPair keys, Point master_public, const Curve& curve, Variant variant,
        std::uint64_t window, const LogicalClock& clock)
      : role_(role),
        keys_(std::move(keys)),
        master_public_(std::move(master_public)),
        curve_(&curve),
        variant_(variant),
        window_(window),
        clock_(&clock) {}

  Role role() const noexcept { return role_; }
  const Identity& id() const noexcept { return keys_.id; }

  Bytes send(const Identity& peer, DeterministicRng& rng) {
    BuiltMessage built = build_message(*curve_, keys_, peer, clock_->now(), variant_, rng);
    ephemeral_.emplace(std::move(built.secret));
    return encode_message(*curve_, built.message);
  }

  VerifyResult receive(ByteView wire) {
    VerifyResult result =
        verify_wire(*curve_, wire, keys_.id, master_public_, clock_->now(), window_, variant_);
    if (auto* peer = std::get_if<VerifiedPeer>(&result)) verified_peer_ = *peer;
    return result;
  }

  bool ready() const noexcept { return ephemeral_.has_value() && verified_peer_.has_value(); }

  SessionKey derive_key() const {
    if (!ready()) throw std::logic_error("derive_key before sending and verifying");
    const Identity& peer = verified_peer_->peer_id;
    const Identity& server = role_ == Role::Server ? keys_.id : peer;
    const Identity& client = role_ == Role::Server ? peer : keys_.id;
    return derive_session_key(*curve_, server, client, *ephemeral_, verified_peer_->ephemeral);
  }

  /// Oracle used by the compromise scenario: hands out this party's
  /// ephemeral private key.
  Scalar leak_ephemeral() const {
    if (!ephemeral_) throw std::logic_error("no ephemeral key to leak");
    return ephemeral_->value();
  }

 private:
  Role role_;
  EntityKeyPair keys_;
  Point master_public_;
  const Curve* curve_;
  Variant variant_;
  std::uint64_t window_;
  const LogicalClock* clock_;
  std::optional<EphemeralSecret> ephemeral_;
  std::optional<VerifiedPeer> verified_peer_;
};

/// The on-path attacker. It holds captured wire bytes and whatever secrets
/// it is explicitly granted, nothing else.
class Adversary {
 public:
  explicit Adversary(const Curve& curve) : curve_(&curve) {}

  const Bytes& intercept(ByteView wire) {
    captured_.assign(wire.begin(), wire.end());
    return captured_;
  }

  const Bytes& rewrite_timestamp(Timestamp t) {
    captured_ = aka::rewrite_timestamp(captured_, t);
    return captured_;
  }

  const Bytes& replay() const noexcept { return captured_; }

  void grant_ephemeral(const Scalar& y) { ephemeral_.emplace(y); }

  /// Session key for the spurious session, computed from the replayed
  /// message, the victim's response and the granted ephemeral key.
  SessionKey derive_key(ByteView response, Role impersonated) const {
    if (!ephemeral_) throw std::logic_error("adversary holds no ephemeral key");
    Identity own = sender_of(captured_);
    Identity victim = sender_of(response);
    FieldSpan y_span = locate_field(response, WireField::Ephemeral);
    Point victim_ephemeral = curve_->decode_point(response.subspan(y_span.offset, y_span.length));
    const Identity& server = impersonated == Role::Server ? own : victim;
    const Identity& client = impersonated == Role::Server ? victim : own;
    return derive_session_key(*curve_, server, client, *ephemeral_, victim_ephemeral);
  }

 private:
  static Identity sender_of(ByteView wire) {
    FieldSpan span = locate_field(wire, WireField::SenderId);
    auto first = wire.begin() + static_cast<std::ptrdiff_t>(span.offset);
    return Identity(std::string(first, first + static_cast<std::ptrdiff_t>(span.length)));
  }

  const Curve* curve_;
  Bytes captured_;
  std::optional<EphemeralSecret> ephemeral_;
};

/// PKG key pair plus extracted keys for the server and client identities.
struct World {
  MasterKeyPair master;
  EntityKeyPair server_keys;
  EntityKeyPair client_keys;
};

inline World setup_world(const Curve& curve, DeterministicRng& rng) {
  MasterKeyPair master = pkg_setup(curve, rng);
  EntityKeyPair server = extract_key(curve, master, server_identity(), rng);
  EntityKeyPair client = extract_key(curve, master, client_identity(), rng);
  return {std::move(master), std::move(server), std::move(client)};
}

namespace detail {

inline Bytes key_bytes(const SessionKey& k) { return Bytes(k.bytes.begin(), k.bytes.end()); }

/// Shared state of one scripted run.
struct Stage {
  explicit Stage(const Scenario& s)
      : scenario(s), rng(s.seed), world(setup_world(s.curve, rng)) {}

  Party make_party(Role role) const {
    const EntityKeyPair& keys = role == Role::Server ? world.server_keys : world.client_keys;
    return Party(role, keys, world.master.public_key, scenario.curve, scenario.variant,
                 scenario.window, clock);
  }

  const Identity& identity(Role role) const {
    return role == Role::Server ? world.server_keys.id : world.client_keys.id;
  }

  void record(Actor actor, Action action, ByteView payload, std::optional<Rejection> reason = {}) {
    transcript.append({clock.now(), actor, action, reason, Bytes(payload.begin(), payload.end())});
  }

  VerifyResult deliver(Party& receiver, ByteView wire) {
    VerifyResult result = receiver.receive(wire);
    if (accepted(result)) {
      record(actor_of(receiver.role()), Action::VerifyOk, {});
    } else {
      record(actor_of(receiver.role()), Action::VerifyFail, {}, std::get<Rejection>(result));
    }
    return result;
  }

  const Scenario& scenario;
  DeterministicRng rng;
  World world;
  LogicalClock clock;
  Transcript transcript;
};

inline void require_accepted(const VerifyResult& r) {
  if (const auto* why = std::get_if<Rejection>(&r)) {
    throw Error(ErrorCode::VerificationFailed, std::string(to_string(*why)));
  }
}

}  // namespace detail

struct ExchangeResult {
  Transcript transcript;
  SessionKey server_key;
  SessionKey client_key;
};

/// Honest run: each message takes one tick in transit.
inline ExchangeResult run_honest_exchange(const Scenario& scenario, MessageOrder order) {
  detail::Stage stage(scenario);
  Party server = stage.make_party(Role::Server);
  Party client = stage.make_party(Role::Client);

  auto send = [&](Party& from, Party& to) {
    Bytes wire = from.send(to.id(), stage.rng);
    stage.record(actor_of(from.role()), Action::Send, wire);
    return wire;
  };
  auto deliver = [&](Party& to, const Bytes& wire) { detail::require_accepted(stage.deliver(to, wire)); };

  switch (order) {
    case MessageOrder::ServerFirst:
    case MessageOrder::ClientFirst: {
      Party& first = order == MessageOrder::ServerFirst ? server : client;
      Party& second = order == MessageOrder::ServerFirst ? client : server;
      Bytes m1 = send(first, second);
      stage.clock.advance(1);
      deliver(second, m1);
      Bytes m2 = send(second, first);
      stage.clock.advance(1);
      deliver(first, m2);
      break;
    }
    case MessageOrder::Parallel: {
      Bytes from_server = send(server, client);
      Bytes from_client = send(client, server);
      stage.clock.advance(1);
      deliver(client, from_server);
      deliver(server, from_client);
      break;
    }
  }

  SessionKey client_key = client.derive_key();
  stage.record(Actor::Client, Action::DeriveKey, detail::key_bytes(client_key));
  SessionKey server_key = server.derive_key();
  stage.record(Actor::Server, Action::DeriveKey, detail::key_bytes(server_key));
  return {std::move(stage.transcript), server_key, client_key};
}

struct AttackOptions {
  bool rewrite_timestamp = true;
  Direction direction = Direction::ServerToClient;
};

struct AttackReport {
  AttackKind attack = AttackKind::Replay;
  Variant variant = Variant::Flawed;
  bool succeeded = false;
  std::optional<Rejection> reason;  // the check that defeated the attack
  std::optional<SessionKey> attacker_key;
  std::optional<SessionKey> victim_key;
  bool keys_match = false;
  Transcript transcript;

  friend bool operator==(const AttackReport&, const AttackReport&) = default;
};

namespace detail {

/// Common opening of both attacks: a genuine message is captured, time
/// passes, and the (optionally re-stamped) bytes reach a fresh victim.
struct ReplayOutcome {
  Party impersonated;
  Party victim;
  VerifyResult verdict;
};

inline ReplayOutcome replay_opening(Stage& stage, Adversary& adversary, const AttackOptions& options,
                                    std::uint64_t delay, bool grant_ephemeral) {
  Role impersonated_role = options.direction == Direction::ServerToClient ? Role::Server : Role::Client;
  Role victim_role = peer_of(impersonated_role);

  Party impersonated = stage.make_party(impersonated_role);
  Bytes genuine = impersonated.send(stage.identity(victim_role), stage.rng);
  stage.record(actor_of(impersonated_role), Action::Send, genuine);
  stage.record(Actor::Adversary, Action::Intercept, adversary.intercept(genuine));
  if (grant_ephemeral) adversary.grant_ephemeral(impersonated.leak_ephemeral());

  stage.clock.advance(delay);
  if (options.rewrite_timestamp) {
    stage.record(Actor::Adversary, Action::RewriteTimestamp, adversary.rewrite_timestamp(stage.clock.now()));
  }
  stage.record(Actor::Adversary, Action::Replay, adversary.replay());

  Party victim = stage.make_party(victim_role);
  VerifyResult verdict = stage.deliver(victim, adversary.replay());
  return {std::move(impersonated), std::move(victim), std::move(verdict)};
}

inline void set_outcome(AttackReport& report, const VerifyResult& verdict) {
  report.succeeded = accepted(verdict);
  if (!report.succeeded) report.reason = std::get<Rejection>(verdict);
}

}  // namespace detail

/// Captures a genuine message, waits `delay` ticks, re-stamps it (unless
/// disabled) and replays it to a fresh victim session.
inline AttackReport run_replay_attack(const Scenario& scenario, const AttackOptions& options = {}) {
  if (scenario.delay <= scenario.window) {
    throw Error(ErrorCode::InvalidScenario, "replay delay must exceed the freshness window");
  }
  detail::Stage stage(scenario);
  Adversary adversary(scenario.curve);
  auto opening = detail::replay_opening(stage, adversary, options, scenario.delay, false);

  AttackReport report;
  report.attack = AttackKind::Replay;
  report.variant = scenario.variant;
  detail::set_outcome(report, opening.verdict);
  report.transcript = std::move(stage.transcript);
  return report;
}

/// Replay plus a leaked ephemeral key for the captured message. Succeeds
/// when the victim accepts, answers, and derives the key the adversary can
/// also compute.
inline AttackReport run_ephemeral_compromise_attack(const Scenario& scenario,
                                                    const AttackOptions& options = {}) {
  detail::Stage stage(scenario);
  Adversary adversary(scenario.curve);
  auto opening = detail::replay_opening(stage, adversary, options, scenario.delay, true);

  AttackReport report;
  report.attack = AttackKind::EphemeralCompromise;
  report.variant = scenario.variant;
  if (accepted(opening.verdict)) {
    Party& victim = opening.victim;
    Bytes response = victim.send(opening.impersonated.id(), stage.rng);
    stage.record(actor_of(victim.role()), Action::Send, response);
    stage.record(Actor::Adversary, Action::Intercept, response);

    SessionKey victim_key = victim.derive_key();
    stage.record(actor_of(victim.role()), Action::DeriveKey, detail::key_bytes(victim_key));
    SessionKey attacker_key = adversary.derive_key(response, opening.impersonated.role());
    stage.record(Actor::Adversary, Action::DeriveKey, detail::key_bytes(attacker_key));

    report.victim_key = victim_key;
    report.attacker_key = attacker_key;
    report.keys_match = victim_key == attacker_key;
    report.succeeded = report.keys_match;
  } else {
    detail::set_outcome(report, opening.verdict);
  }
  report.transcript = std::move(stage.transcript);
  return report;
}

}  // namespace aka::sim
