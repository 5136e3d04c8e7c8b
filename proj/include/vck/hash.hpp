#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "vck/bytes.hpp"
#include "vck/error.hpp"

namespace vck {

using Digest = std::array<std::uint8_t, 32>;

// Identifier written into every proof header.
enum class HashAlgorithm : std::uint8_t { kSha256 = 1 };

inline constexpr HashAlgorithm kHashAlgorithm = HashAlgorithm::kSha256;

// Incremental SHA-256 backed by OpenSSL's EVP interface.
class Hasher {
 public:
  Hasher() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw InternalError("SHA-256 initialisation failed");
    }
  }

  Hasher& update(std::span<const std::uint8_t> data) {
    if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1) throw InternalError("SHA-256 update failed");
    return *this;
  }
  Hasher& update(std::string_view s) {
    return update(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }
  Hasher& update_u8(std::uint8_t v) { return update(std::span(&v, 1)); }
  Hasher& update_u64(std::uint64_t v) {
    std::array<std::uint8_t, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
    return update(b);
  }

  Digest finish() {
    Digest out{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size()) {
      throw InternalError("SHA-256 finalisation failed");
    }
    return out;
  }

 private:
  struct Free {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
  };
  std::unique_ptr<EVP_MD_CTX, Free> ctx_;
};

inline Digest sha256(std::span<const std::uint8_t> data) { return Hasher().update(data).finish(); }

inline void write_digest(ByteWriter& w, const Digest& d) { w.raw(d); }
inline Digest read_digest(ByteReader& r) {
  Digest d{};
  auto s = r.raw(d.size());
  std::copy(s.begin(), s.end(), d.begin());
  return d;
}

}  // namespace vck
