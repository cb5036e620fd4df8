#pragma once

// El Gamal-type identity-based signatures issued by a private key generator
// (PKG).
//
// Key extraction: R = r*P, c = H1(ID || R), s = r + c*s_pkg (mod q).
// Signing:        X = x*P, h = H2(ID || ID' || Y || R || X [|| t]), mu = x + h*s.
// Verification:   X' = mu*P - h*(R + c*S_pkg), accept iff H2(..., X' [, t]) = h.
//
// s is a scalar. The verification equation only balances when s = r + c*s_pkg
// mod q, so the extra factor of P that sometimes appears in write-ups of this
// scheme is not applied.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "aka/group.hpp"
#include "aka/hash.hpp"
#include "aka/random.hpp"

namespace aka {

/// Non-empty text label of at most 255 bytes.
class Identity {
 public:
  static constexpr std::size_t kMaxLength = 255;

  explicit Identity(std::string value) : value_(std::move(value)) {
    if (value_.empty() || value_.size() > kMaxLength) {
      throw Error(ErrorCode::InvalidIdentity, "identity must be 1..255 bytes");
    }
  }

  const std::string& str() const noexcept { return value_; }
  ByteView bytes() const noexcept { return as_bytes(value_); }

  friend bool operator==(const Identity&, const Identity&) = default;

 private:
  std::string value_;
};

/// Logical time in ticks.
struct Timestamp {
  std::uint64_t ticks = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

inline Bytes encode_timestamp(Timestamp t) {
  Bytes out;
  append_u64(out, t.ticks);
  return out;
}

/// FLAWED leaves the timestamp outside H2; FIXED appends it as a sixth field.
enum class Variant { Flawed, Fixed };

constexpr std::string_view to_string(Variant v) noexcept {
  return v == Variant::Flawed ? "FLAWED" : "FIXED";
}

struct MasterKeyPair {
  Scalar secret;     // s_pkg
  Point public_key;  // S_pkg = s_pkg * P
};

struct EntityKeyPair {
  Identity id;
  Scalar secret;     // s
  Point public_key;  // R
};

struct Signature {
  Digest h{};
  Scalar mu;
  Point R;

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline MasterKeyPair pkg_from_secret(const Curve& curve, const Scalar& secret) {
  if (secret.is_zero()) throw std::invalid_argument("master secret must be non-zero");
  return {secret, curve.multiply_generator(secret)};
}

inline MasterKeyPair pkg_setup(const Curve& curve, DeterministicRng& rng) {
  return pkg_from_secret(curve, random_nonzero_scalar(curve, rng));
}

/// c = H1(ID || R) mod q.
inline Scalar key_binding_challenge(const Curve& curve, const Identity& id, const Point& R) {
  FieldHasher hasher(HashDomain::KeyBinding);
  hasher.field(id.bytes()).field(curve.encode_point(R));
  return digest_to_scalar(curve, hasher.finish());
}

inline EntityKeyPair extract_key(const Curve& curve, const MasterKeyPair& master,
                                 const Identity& id, DeterministicRng& rng) {
  Scalar r = random_nonzero_scalar(curve, rng);
  Point R = curve.multiply_generator(r);
  Scalar c = key_binding_challenge(curve, id, R);
  Scalar s = curve.scalar(r.value() + c.value() * master.secret.value());
  return {id, s, R};
}

/// H2 over sender, recipient, Y, R, X, and under FIXED also t.
inline Digest signature_digest(const Curve& curve, const Identity& sender,
                               const Identity& recipient, const Point& Y, const Point& R,
                               const Point& X, Timestamp t, Variant variant) {
  FieldHasher hasher(HashDomain::Signature);
  hasher.field(sender.bytes())
      .field(recipient.bytes())
      .field(curve.encode_point(Y))
      .field(curve.encode_point(R))
      .field(curve.encode_point(X));
  if (variant == Variant::Fixed) hasher.field(encode_timestamp(t));
  return hasher.finish();
}

struct SigningResult {
  Signature signature;
  Point commitment;  // X, returned for tests; callers normally discard it
};

/// Signs on behalf of `keys.id`. The nonce x never leaves this function.
inline SigningResult sign(const Curve& curve, const EntityKeyPair& keys, const Identity& recipient,
                          const Point& Y, Timestamp t, Variant variant, DeterministicRng& rng) {
  Scalar x = random_nonzero_scalar(curve, rng);
  Point X = curve.multiply_generator(x);
  Digest h = signature_digest(curve, keys.id, recipient, Y, keys.public_key, X, t, variant);
  Scalar hq = digest_to_scalar(curve, h);
  Scalar mu = curve.scalar(x.value() + hq.value() * keys.secret.value());
  return {Signature{h, mu, keys.public_key}, X};
}

/// X' = mu*P - h*(R + c*S_pkg).
inline Point recover_commitment(const Curve& curve, const Signature& sig, const Identity& sender,
                                const Point& master_public) {
  Scalar c = key_binding_challenge(curve, sender, sig.R);
  Point entity_public = curve.add(sig.R, curve.multiply(c, master_public));
  Scalar hq = digest_to_scalar(curve, sig.h);
  return curve.subtract(curve.multiply_generator(sig.mu), curve.multiply(hq, entity_public));
}

/// Full 256-bit comparison of h against the recomputed digest.
inline bool verify_signature(const Curve& curve, const Signature& sig, const Identity& sender,
                             const Identity& recipient, const Point& Y, Timestamp t,
                             const Point& master_public, Variant variant) {
  if (sig.R.is_identity() || !curve.is_on_curve(sig.R) || !curve.is_on_curve(Y) ||
      !curve.is_on_curve(master_public)) {
    return false;
  }
  Point X = recover_commitment(curve, sig, sender, master_public);
  return signature_digest(curve, sender, recipient, Y, sig.R, X, t, variant) == sig.h;
}

}  // namespace aka
