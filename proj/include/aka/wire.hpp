#pragma once

// Byte-level access to encoded protocol messages, without decoding them.
// This is what an on-path attacker works with.

#include <string_view>

#include "aka/bytes.hpp"
#include "aka/error.hpp"
#include "aka/ibs.hpp"

namespace aka {

/// Fields of the wire format, in order.
enum class WireField { SenderId, Ephemeral, Digest, Mu, LongTermKey, Timestamp };

inline constexpr WireField kAllWireFields[] = {WireField::SenderId, WireField::Ephemeral,
                                               WireField::Digest,   WireField::Mu,
                                               WireField::LongTermKey, WireField::Timestamp};

constexpr std::string_view to_string(WireField f) noexcept {
  switch (f) {
    case WireField::SenderId: return "sender_id";
    case WireField::Ephemeral: return "Y";
    case WireField::Digest: return "h";
    case WireField::Mu: return "mu";
    case WireField::LongTermKey: return "R";
    case WireField::Timestamp: return "t";
  }
  return "unknown";
}

struct FieldSpan {
  std::size_t offset = 0;  // first value byte, after the length prefix
  std::size_t length = 0;
};

/// Walks the length prefixes to find `field`. Only framing is checked.
inline FieldSpan locate_field(ByteView wire, WireField field) {
  std::size_t pos = 1;  // version byte
  if (wire.empty()) throw Error(ErrorCode::MalformedMessage, "empty message");
  for (WireField f : kAllWireFields) {
    if (wire.size() < pos + 2) throw Error(ErrorCode::MalformedMessage, "truncated length prefix");
    std::size_t len = (std::size_t{wire[pos]} << 8) | wire[pos + 1];
    if (wire.size() - pos - 2 < len) throw Error(ErrorCode::MalformedMessage, "truncated field");
    if (f == field) return {pos + 2, len};
    pos += 2 + len;
  }
  throw Error(ErrorCode::MalformedMessage, "unknown field");
}

/// Copy of `wire` with one byte of `field` XORed with `mask`.
inline Bytes tamper_field(ByteView wire, WireField field, std::size_t byte_index, std::uint8_t mask) {
  FieldSpan span = locate_field(wire, field);
  if (byte_index >= span.length) {
    throw Error(ErrorCode::FieldOutOfRange, std::string(to_string(field)) + " has only " +
                                                std::to_string(span.length) + " bytes");
  }
  Bytes out(wire.begin(), wire.end());
  out[span.offset + byte_index] ^= mask;
  return out;
}

/// Overwrites the trailing timestamp field in place: the last ten bytes are
/// the length 0x0008 followed by eight big-endian tick bytes.
inline Bytes rewrite_timestamp(ByteView wire, Timestamp t) {
  if (wire.size() < 10 || wire[wire.size() - 10] != 0x00 || wire[wire.size() - 9] != 0x08) {
    throw Error(ErrorCode::MalformedMessage, "no trailing timestamp field");
  }
  Bytes out(wire.begin(), wire.end());
  for (std::size_t i = 0; i < 8; ++i) {
    out[out.size() - 8 + i] = static_cast<std::uint8_t>(t.ticks >> (56 - 8 * i));
  }
  return out;
}

inline Timestamp read_wire_timestamp(ByteView wire) {
  FieldSpan span = locate_field(wire, WireField::Timestamp);
  if (span.length != 8) throw Error(ErrorCode::MalformedMessage, "bad timestamp length");
  return Timestamp{read_u64(wire.subspan(span.offset, 8))};
}

}  // namespace aka
