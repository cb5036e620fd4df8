#pragma once

// The two-message key agreement. Each party sends ID || Y || sigma || t with
// sigma = (h, mu, R); the receiver checks freshness, then the signature,
// then hashes both identities (server first) with y'Y.
//
// Wire format (all fields prefixed with a 2-byte big-endian length):
//   0x01 | sender_id | Y | h (32) | mu (width of q) | R | t (8, big-endian)

#include <array>
#include <optional>
#include <string_view>
#include <variant>

#include "aka/ibs.hpp"

namespace aka {

inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::uint64_t kDefaultWindow = 10;

struct ProtocolMessage {
  Identity sender_id;
  Point ephemeral;  // Y
  Signature sig;
  Timestamp t;

  friend bool operator==(const ProtocolMessage&, const ProtocolMessage&) = default;
};

/// Ephemeral private key y. Move-only; consumed by one exchange.
class EphemeralSecret {
 public:
  explicit EphemeralSecret(Scalar y) : y_(std::move(y)) {}
  EphemeralSecret(EphemeralSecret&&) = default;
  EphemeralSecret& operator=(EphemeralSecret&&) = default;
  EphemeralSecret(const EphemeralSecret&) = delete;
  EphemeralSecret& operator=(const EphemeralSecret&) = delete;

  const Scalar& value() const noexcept { return y_; }

 private:
  Scalar y_;
};

struct SessionKey {
  std::array<std::uint8_t, 32> bytes{};

  std::string hex() const { return to_hex(bytes); }
  friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

struct BuiltMessage {
  ProtocolMessage message;
  EphemeralSecret secret;
};

inline BuiltMessage build_message(const Curve& curve, const EntityKeyPair& keys,
                                  const Identity& peer, Timestamp now, Variant variant,
                                  DeterministicRng& rng) {
  Scalar y = random_nonzero_scalar(curve, rng);
  Point Y = curve.multiply_generator(y);
  SigningResult signed_result = sign(curve, keys, peer, Y, now, variant, rng);
  return {ProtocolMessage{keys.id, std::move(Y), std::move(signed_result.signature), now},
          EphemeralSecret(std::move(y))};
}

enum class Rejection { StaleTimestamp, FutureTimestamp, BadSignature, MalformedMessage };

constexpr std::string_view to_string(Rejection r) noexcept {
  switch (r) {
    case Rejection::StaleTimestamp: return "StaleTimestamp";
    case Rejection::FutureTimestamp: return "FutureTimestamp";
    case Rejection::BadSignature: return "BadSignature";
    case Rejection::MalformedMessage: return "MalformedMessage";
  }
  return "Unknown";
}

/// Which side of the symmetric window `t` falls outside of, if any.
inline std::optional<Rejection> freshness_verdict(Timestamp t, Timestamp now, std::uint64_t window) {
  if (t.ticks < now.ticks && now.ticks - t.ticks > window) return Rejection::StaleTimestamp;
  if (t.ticks > now.ticks && t.ticks - now.ticks > window) return Rejection::FutureTimestamp;
  return std::nullopt;
}

/// True iff now - window <= t <= now + window.
inline bool check_freshness(Timestamp t, Timestamp now, std::uint64_t window) {
  return !freshness_verdict(t, now, window).has_value();
}

struct VerifiedPeer {
  Identity peer_id;
  Point ephemeral;

  friend bool operator==(const VerifiedPeer&, const VerifiedPeer&) = default;
};

using VerifyResult = std::variant<VerifiedPeer, Rejection>;

inline bool accepted(const VerifyResult& r) noexcept {
  return std::holds_alternative<VerifiedPeer>(r);
}

/// Freshness first, then the signature with recipient = `self_id`.
inline VerifyResult verify_message(const Curve& curve, const ProtocolMessage& msg,
                                   const Identity& self_id, const Point& master_public,
                                   Timestamp now, std::uint64_t window, Variant variant) {
  if (auto stale = freshness_verdict(msg.t, now, window)) return *stale;
  if (msg.ephemeral.is_identity() || !curve.is_on_curve(msg.ephemeral)) {
    return Rejection::MalformedMessage;
  }
  if (!verify_signature(curve, msg.sig, msg.sender_id, self_id, msg.ephemeral, msg.t,
                        master_public, variant)) {
    return Rejection::BadSignature;
  }
  return VerifiedPeer{msg.sender_id, msg.ephemeral};
}

/// K = H3(server ID || client ID || encode(y' * Y)).
inline SessionKey derive_session_key(const Curve& curve, const Identity& server_id,
                                     const Identity& client_id, const EphemeralSecret& own,
                                     const Point& peer_ephemeral) {
  if (peer_ephemeral.is_identity() || !curve.is_on_curve(peer_ephemeral)) {
    throw Error(ErrorCode::InvalidPeerPoint, "peer ephemeral key must be a non-identity curve point");
  }
  Point shared = curve.multiply(own.value(), peer_ephemeral);
  FieldHasher hasher(HashDomain::SessionKey);
  hasher.field(server_id.bytes()).field(client_id.bytes()).field(curve.encode_point(shared));
  return SessionKey{hasher.finish()};
}

inline Bytes encode_message(const Curve& curve, const ProtocolMessage& msg) {
  Bytes out;
  out.push_back(kWireVersion);
  append_field(out, msg.sender_id.bytes());
  append_field(out, curve.encode_point(msg.ephemeral));
  append_field(out, msg.sig.h);
  append_field(out, curve.encode_scalar(msg.sig.mu));
  append_field(out, curve.encode_point(msg.sig.R));
  append_field(out, encode_timestamp(msg.t));
  return out;
}

namespace detail {

class FieldReader {
 public:
  explicit FieldReader(ByteView bytes) : rest_(bytes) {}

  ByteView next() {
    if (rest_.size() < 2) malformed("truncated length prefix");
    std::size_t len = (std::size_t{rest_[0]} << 8) | rest_[1];
    if (rest_.size() - 2 < len) malformed("truncated field");
    ByteView field = rest_.subspan(2, len);
    rest_ = rest_.subspan(2 + len);
    return field;
  }

  bool done() const noexcept { return rest_.empty(); }

  [[noreturn]] static void malformed(const char* what) {
    throw Error(ErrorCode::MalformedMessage, what);
  }

 private:
  ByteView rest_;
};

}  // namespace detail

/// Strict inverse of `encode_message`. Throws MalformedMessage on framing
/// problems and PointNotOnCurve when a well-formed point is off the curve.
inline ProtocolMessage decode_message(const Curve& curve, ByteView bytes) {
  using detail::FieldReader;
  if (bytes.empty() || bytes[0] != kWireVersion) FieldReader::malformed("missing or unknown version byte");
  FieldReader reader(bytes.subspan(1));

  ByteView id_field = reader.next();
  ByteView y_field = reader.next();
  ByteView h_field = reader.next();
  ByteView mu_field = reader.next();
  ByteView r_field = reader.next();
  ByteView t_field = reader.next();
  if (!reader.done()) FieldReader::malformed("trailing bytes");

  if (id_field.empty() || id_field.size() > Identity::kMaxLength) FieldReader::malformed("bad sender id length");
  if (h_field.size() != std::tuple_size_v<Digest>) FieldReader::malformed("bad digest length");
  if (mu_field.size() != curve.scalar_width()) FieldReader::malformed("bad mu length");
  if (t_field.size() != 8) FieldReader::malformed("bad timestamp length");

  auto point = [&](ByteView field) {
    try {
      return curve.decode_point(field);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MalformedEncoding) FieldReader::malformed("bad point encoding");
      throw;
    }
  };
  Point Y = point(y_field);
  Point R = point(r_field);
  if (Y.is_identity() || R.is_identity()) FieldReader::malformed("identity point in message");

  Integer mu = read_be(mu_field);
  if (mu >= curve.order()) FieldReader::malformed("mu not reduced mod q");

  Signature sig;
  std::copy(h_field.begin(), h_field.end(), sig.h.begin());
  sig.mu = curve.scalar(mu);
  sig.R = std::move(R);

  return ProtocolMessage{Identity(std::string(id_field.begin(), id_field.end())), std::move(Y),
                         std::move(sig), Timestamp{read_u64(t_field)}};
}

/// Decodes and verifies; any decoding failure becomes MalformedMessage.
inline VerifyResult verify_wire(const Curve& curve, ByteView bytes, const Identity& self_id,
                                const Point& master_public, Timestamp now, std::uint64_t window,
                                Variant variant) {
  std::optional<ProtocolMessage> msg;
  try {
    msg = decode_message(curve, bytes);
  } catch (const Error&) {
    return Rejection::MalformedMessage;
  }
  return verify_message(curve, *msg, self_id, master_public, now, window, variant);
}

}  // namespace aka
