#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aka/error.hpp"

namespace aka {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::MalformedEncoding, "odd-length hex string");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::MalformedEncoding, "non-hex character");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

/// Minimal number of bytes needed to hold `v` (at least one).
inline std::size_t byte_length(const Integer& v) {
  if (v <= 0) return 1;
  return boost::multiprecision::msb(v) / 8 + 1;
}

/// Fixed-width big-endian encoding; `v` must satisfy 0 <= v < 256^width.
inline void append_be(Bytes& out, const Integer& v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t shift = 8 * (width - 1 - i);
    out.push_back(static_cast<std::uint8_t>(static_cast<unsigned>((v >> shift) & 0xff)));
  }
}

inline Integer read_be(ByteView bytes) {
  Integer v = 0;
  for (std::uint8_t b : bytes) {
    v <<= 8;
    v += b;
  }
  return v;
}

inline void append_u16(Bytes& out, std::size_t v) {
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline void append_u64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

inline std::uint64_t read_u64(ByteView bytes) {
  std::uint64_t v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  return v;
}

/// Appends `field` preceded by its 2-byte big-endian length.
inline void append_field(Bytes& out, ByteView field) {
  if (field.size() > 0xffff) {
    throw Error(ErrorCode::MalformedEncoding, "field longer than 65535 bytes");
  }
  append_u16(out, field.size());
  out.insert(out.end(), field.begin(), field.end());
}

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace aka
