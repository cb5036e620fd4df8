#pragma once

#include <string>
#include <string_view>

#include "aka/group.hpp"
#include "aka/kv_file.hpp"

namespace aka {

/// Reads p, a, b, gx, gy, q (decimal). The result is unvalidated; pass it
/// to `Curve` or `validate_params`.
inline CurveParams parse_curve_params(std::string_view text) {
  auto kv = parse_kv(text, {"p", "a", "b", "gx", "gy", "q"}, ErrorCode::InvalidParameterFile);
  auto num = [&](const char* key) { return parse_decimal(kv.at(key), ErrorCode::InvalidParameterFile); };
  return CurveParams{num("p"), num("a"), num("b"), Point(num("gx"), num("gy")), num("q")};
}

inline std::string format_curve_params(const CurveParams& c) {
  std::string out;
  out += "p = " + c.p.str() + "\n";
  out += "a = " + c.a.str() + "\n";
  out += "b = " + c.b.str() + "\n";
  out += "gx = " + c.gen.x().str() + "\n";
  out += "gy = " + c.gen.y().str() + "\n";
  out += "q = " + c.q.str() + "\n";
  return out;
}

inline Curve load_curve_file(const std::string& path) {
  return Curve(parse_curve_params(read_text_file(path, ErrorCode::InvalidParameterFile)));
}

}  // namespace aka
