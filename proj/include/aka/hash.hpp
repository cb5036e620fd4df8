#pragma once

#include <array>
#include <cstdint>

#include <openssl/evp.h>

#include "aka/bytes.hpp"
#include "aka/group.hpp"

namespace aka {

using Digest = std::array<std::uint8_t, 32>;

/// One-byte prefix separating the three hash roles.
enum class HashDomain : std::uint8_t {
  KeyBinding = 0x01,   // c = H1(ID || R)
  Signature = 0x02,    // h = H2(ID || ID' || Y || R || X [|| t])
  SessionKey = 0x03,   // K = H3(server ID || client ID || y'Y)
};

/// SHA-256 over domain byte followed by length-prefixed fields.
class FieldHasher {
 public:
  explicit FieldHasher(HashDomain domain) { buffer_.push_back(static_cast<std::uint8_t>(domain)); }

  FieldHasher& field(ByteView bytes) {
    append_field(buffer_, bytes);
    return *this;
  }

  Digest finish() const {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(buffer_.data(), buffer_.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size()) {
      throw std::runtime_error("SHA-256 computation failed");
    }
    return out;
  }

  /// Exact bytes fed to SHA-256.
  const Bytes& preimage() const noexcept { return buffer_; }

 private:
  Bytes buffer_;
};

/// Big-endian integer value of the digest, reduced mod q. The modulo bias is
/// ignored.
inline Scalar digest_to_scalar(const Curve& curve, const Digest& d) {
  return curve.scalar(read_be(d));
}

}  // namespace aka
