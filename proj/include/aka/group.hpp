#pragma once

// Short-Weierstrass curve arithmetic y^2 = x^3 + ax + b over a prime field,
// in affine coordinates. Nothing here is constant time.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include <boost/multiprecision/miller_rabin.hpp>

#include "aka/bytes.hpp"
#include "aka/error.hpp"

namespace aka {

/// Non-negative residue of `v` modulo `m`.
inline Integer mod(const Integer& v, const Integer& m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r;
}

/// Modular inverse by the extended Euclidean algorithm.
inline Integer inverse_mod(const Integer& v, const Integer& m) {
  Integer old_r = mod(v, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer quotient = old_r / r;
    Integer tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    throw std::domain_error("inverse_mod: value not invertible");
  }
  return mod(old_s, m);
}

inline constexpr unsigned kSmallPrimeLimitBits = 16;
inline constexpr unsigned kMillerRabinRounds = 64;

/// Trial division below 2^16, 64-round Miller-Rabin above. The witness
/// generator is seeded with a constant so validation is reproducible.
inline bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < (Integer(1) << kSmallPrimeLimitBits)) {
    auto v = static_cast<std::uint32_t>(n);
    for (std::uint32_t d = 2; d * d <= v; ++d) {
      if (v % d == 0) return false;
    }
    return true;
  }
  std::mt19937_64 witnesses(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, kMillerRabinRounds, witnesses);
}

/// A curve point: either the identity (point at infinity) or affine (x, y).
class Point {
 public:
  Point() = default;
  Point(Integer x, Integer y) : coords_(std::in_place, std::move(x), std::move(y)) {}

  static Point identity() { return Point(); }

  bool is_identity() const noexcept { return !coords_.has_value(); }
  const Integer& x() const { return coords_.value().first; }
  const Integer& y() const { return coords_.value().second; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::optional<std::pair<Integer, Integer>> coords_;
};

/// Integer modulo the group order q, always reduced.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Integer& v, const Integer& q) : value_(mod(v, q)) {}

  const Integer& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  Integer value_ = 0;
};

/// p is always the field modulus and q always the prime order of `gen`.
struct CurveParams {
  Integer p;
  Integer a;
  Integer b;
  Point gen;
  Integer q;

  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

namespace detail {

inline bool on_curve(const CurveParams& c, const Point& u) {
  if (u.is_identity()) return true;
  if (u.x() < 0 || u.x() >= c.p || u.y() < 0 || u.y() >= c.p) return false;
  return mod(u.y() * u.y() - (u.x() * u.x() * u.x() + c.a * u.x() + c.b), c.p) == 0;
}

inline Point add_unchecked(const CurveParams& c, const Point& u, const Point& v) {
  if (u.is_identity()) return v;
  if (v.is_identity()) return u;
  if (u.x() == v.x() && mod(u.y() + v.y(), c.p) == 0) return Point::identity();
  Integer slope;
  if (u == v) {
    slope = mod((3 * u.x() * u.x() + c.a) * inverse_mod(2 * u.y(), c.p), c.p);
  } else {
    slope = mod((v.y() - u.y()) * inverse_mod(v.x() - u.x(), c.p), c.p);
  }
  Integer x = mod(slope * slope - u.x() - v.x(), c.p);
  Integer y = mod(slope * (u.x() - x) - u.y(), c.p);
  return Point(std::move(x), std::move(y));
}

inline Point multiply_unchecked(const CurveParams& c, Integer k, const Point& u) {
  Point base = u;
  if (k < 0) {
    k = -k;
    if (!base.is_identity()) base = Point(base.x(), mod(-base.y(), c.p));
  }
  Point acc;
  if (k == 0) return acc;
  for (unsigned bit = boost::multiprecision::msb(k) + 1; bit-- > 0;) {
    acc = add_unchecked(c, acc, acc);
    if (boost::multiprecision::bit_test(k, bit)) acc = add_unchecked(c, acc, base);
  }
  return acc;
}

}  // namespace detail

/// Number of points (identity included) found by walking every x in [0, p).
/// Only meant for desk-scale fields.
inline Integer count_points(const CurveParams& c) {
  auto p = static_cast<std::uint64_t>(c.p);
  auto a = static_cast<std::uint64_t>(c.a);
  auto b = static_cast<std::uint64_t>(c.b);
  auto pow_mod = [p](std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    base %= p;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  Integer count = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t rhs = (x * x % p * x + a * x + b) % p;
    if (rhs == 0) {
      count += 1;
    } else if (pow_mod(rhs, (p - 1) / 2) == 1) {
      count += 2;
    }
  }
  return count;
}

/// Checks candidate parameters and returns them unchanged when acceptable.
///
/// For p < 2^16 the point count is enumerated and the order of the generator
/// is found by repeated addition; above that, q prime and q*gen = identity
/// are taken as sufficient.
inline CurveParams validate_params(const CurveParams& raw) {
  if (raw.p <= 3 || !is_probable_prime(raw.p)) {
    throw Error(ErrorCode::NonPrimeModulus, "p must be a prime greater than 3");
  }
  if (raw.a < 0 || raw.a >= raw.p || raw.b < 0 || raw.b >= raw.p) {
    throw Error(ErrorCode::CoefficientOutOfRange, "a and b must lie in [0, p)");
  }
  if (mod(4 * raw.a * raw.a * raw.a + 27 * raw.b * raw.b, raw.p) == 0) {
    throw Error(ErrorCode::SingularCurve, "4a^3 + 27b^2 = 0 mod p");
  }
  if (raw.gen.is_identity() || !detail::on_curve(raw, raw.gen)) {
    throw Error(ErrorCode::GeneratorNotOnCurve, "generator is not an affine curve point");
  }
  if (!is_probable_prime(raw.q)) {
    throw Error(ErrorCode::WrongOrder, "q is not prime");
  }
  if (!detail::multiply_unchecked(raw, raw.q, raw.gen).is_identity()) {
    throw Error(ErrorCode::WrongOrder, "q * gen is not the identity");
  }
  if (raw.p < (Integer(1) << kSmallPrimeLimitBits)) {
    if (count_points(raw) % raw.q != 0) {
      throw Error(ErrorCode::WrongOrder, "q does not divide the number of curve points");
    }
    Integer order = 1;
    for (Point acc = raw.gen; !acc.is_identity(); acc = detail::add_unchecked(raw, acc, raw.gen)) {
      ++order;
      if (order > raw.q) break;
    }
    if (order != raw.q) {
      throw Error(ErrorCode::WrongOrder, "generator order differs from q");
    }
  }
  return raw;
}

/// A validated curve; the only way to do point arithmetic.
class Curve {
 public:
  explicit Curve(const CurveParams& raw) : params_(validate_params(raw)) {
    field_width_ = byte_length(params_.p);
    scalar_width_ = byte_length(params_.q);
  }

  /// p = 17, a = 2, b = 2, gen = (5, 1), q = 19.
  static const Curve& toy() {
    static const Curve curve(CurveParams{17, 2, 2, Point(5, 1), 19});
    return curve;
  }

  const CurveParams& params() const noexcept { return params_; }
  const Point& generator() const noexcept { return params_.gen; }
  const Integer& order() const noexcept { return params_.q; }
  std::size_t field_width() const noexcept { return field_width_; }
  std::size_t scalar_width() const noexcept { return scalar_width_; }

  Scalar scalar(const Integer& v) const { return Scalar(v, params_.q); }

  bool is_on_curve(const Point& u) const { return detail::on_curve(params_, u); }

  Point add(const Point& u, const Point& v) const {
    require_on_curve(u);
    require_on_curve(v);
    return detail::add_unchecked(params_, u, v);
  }

  Point negate(const Point& u) const {
    require_on_curve(u);
    if (u.is_identity()) return u;
    return Point(u.x(), mod(-u.y(), params_.p));
  }

  Point subtract(const Point& u, const Point& v) const { return add(u, negate(v)); }

  /// Double-and-add; `k` may be any integer.
  Point multiply(const Integer& k, const Point& u) const {
    require_on_curve(u);
    return detail::multiply_unchecked(params_, k, u);
  }

  Point multiply(const Scalar& k, const Point& u) const { return multiply(k.value(), u); }

  Point multiply_generator(const Scalar& k) const {
    return detail::multiply_unchecked(params_, k.value(), params_.gen);
  }

  /// 0x00 for the identity, otherwise 0x04 || x || y with fixed-width
  /// big-endian coordinates.
  Bytes encode_point(const Point& u) const {
    Bytes out;
    if (u.is_identity()) {
      out.push_back(0x00);
      return out;
    }
    out.reserve(1 + 2 * field_width_);
    out.push_back(0x04);
    append_be(out, u.x(), field_width_);
    append_be(out, u.y(), field_width_);
    return out;
  }

  Point decode_point(ByteView bytes) const {
    if (bytes.size() == 1 && bytes[0] == 0x00) return Point::identity();
    if (bytes.size() != 1 + 2 * field_width_ || bytes[0] != 0x04) {
      throw Error(ErrorCode::MalformedEncoding, "bad point encoding length or tag");
    }
    Integer x = read_be(bytes.subspan(1, field_width_));
    Integer y = read_be(bytes.subspan(1 + field_width_, field_width_));
    if (x >= params_.p || y >= params_.p) {
      throw Error(ErrorCode::MalformedEncoding, "coordinate not reduced mod p");
    }
    Point u(std::move(x), std::move(y));
    if (!is_on_curve(u)) {
      throw Error(ErrorCode::PointNotOnCurve, "decoded point is not on the curve");
    }
    return u;
  }

  Bytes encode_scalar(const Scalar& k) const {
    Bytes out;
    append_be(out, k.value(), scalar_width_);
    return out;
  }

  friend bool operator==(const Curve& l, const Curve& r) { return l.params_ == r.params_; }

 private:
  void require_on_curve(const Point& u) const {
    if (!is_on_curve(u)) throw Error(ErrorCode::PointNotOnCurve, "operand is not on the curve");
  }

  CurveParams params_;
  std::size_t field_width_ = 0;
  std::size_t scalar_width_ = 0;
};

}  // namespace aka
