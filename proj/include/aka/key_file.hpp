#pragma once

// Entity key pairs as `key = value` text (id, s, rx, ry). The private key is
// stored in the clear; this is demo storage only.

#include <string>
#include <string_view>

#include "aka/ibs.hpp"
#include "aka/kv_file.hpp"

namespace aka {

inline std::string format_key_file(const EntityKeyPair& keys) {
  std::string out;
  out += "# demo key file, private key stored unencrypted\n";
  out += "id = " + keys.id.str() + "\n";
  out += "s = " + keys.secret.value().str() + "\n";
  out += "rx = " + keys.public_key.x().str() + "\n";
  out += "ry = " + keys.public_key.y().str() + "\n";
  return out;
}

inline EntityKeyPair parse_key_file(const Curve& curve, std::string_view text) {
  auto kv = parse_kv(text, {"id", "s", "rx", "ry"}, ErrorCode::InvalidKeyFile);
  auto num = [&](const char* key) { return parse_decimal(kv.at(key), ErrorCode::InvalidKeyFile); };
  Integer s = num("s");
  if (s == 0 || s >= curve.order()) throw Error(ErrorCode::InvalidKeyFile, "s outside [1, q)");
  Point R(num("rx"), num("ry"));
  if (!curve.is_on_curve(R)) throw Error(ErrorCode::InvalidKeyFile, "R is not on the curve");
  try {
    return EntityKeyPair{Identity(kv.at("id")), curve.scalar(s), std::move(R)};
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidKeyFile, e.what());
  }
}

}  // namespace aka
