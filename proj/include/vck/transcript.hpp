#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/field.hpp"
#include "vck/hash.hpp"

namespace vck {

inline constexpr std::string_view kTranscriptDomain = "vc-kit/v1";
inline constexpr std::size_t kMaxLabelSize = 32;

// Fiat-Shamir transcript. Each absorb replaces the state with
//   H(state || u8 len(label) || label || u64 len(data) || data)
// and resets the draw counter; each draw hashes (state, counter) and bumps
// the counter, so the same state never yields the same block twice.
// Copying a transcript forks the challenge stream.
class Transcript {
 public:
  explicit Transcript(std::string_view protocol)
      : state_(Hasher().update(kTranscriptDomain).update(protocol).finish()) {}

  void absorb(std::string_view label, std::span<const std::uint8_t> data) {
    if (label.size() > kMaxLabelSize) throw UsageError("transcript label longer than 32 bytes");
    state_ = Hasher()
                 .update(state_)
                 .update_u8(static_cast<std::uint8_t>(label.size()))
                 .update(label)
                 .update_u64(data.size())
                 .update(data)
                 .finish();
    counter_ = 0;
    labels_.emplace_back(label);
  }
  void absorb(std::string_view label, std::string_view data) {
    absorb(label, std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
  }
  void absorb_u64(std::string_view label, std::uint64_t v) {
    ByteWriter w;
    w.u64(v);
    absorb(label, w.bytes());
  }
  template <PrimeFieldElement F>
  void absorb_field(std::string_view label, F v) {
    ByteWriter w;
    v.write(w);
    absorb(label, w.bytes());
  }

  Digest next_block() {
    return Hasher().update_u8(0x02).update(state_).update_u64(counter_++).finish();
  }

  Bytes challenge_bytes(std::size_t n) {
    Bytes out;
    out.reserve(n + 32);
    while (out.size() < n) {
      Digest d = next_block();
      out.insert(out.end(), d.begin(), d.end());
    }
    out.resize(n);
    return out;
  }

  std::uint64_t challenge_u64() {
    Digest d = next_block();
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
    return v;
  }

  // Rejection sampling over 8-byte draws masked to the modulus bit width.
  template <PrimeFieldElement F>
  F challenge_field() {
    constexpr std::uint64_t mask = F::kBits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << F::kBits) - 1;
    for (;;) {
      std::uint64_t v = challenge_u64() & mask;
      if (v < F::kModulus) return F(v);
    }
  }

  // Uniform index in [0, bound).
  std::size_t challenge_index(std::size_t bound) {
    if (bound == 0) throw UsageError("challenge bound must be positive");
    const std::uint64_t mask = std::bit_ceil(static_cast<std::uint64_t>(bound)) - 1;
    for (;;) {
      std::uint64_t v = challenge_u64() & mask;
      if (v < bound) return static_cast<std::size_t>(v);
    }
  }

  const Digest& state() const { return state_; }
  std::uint64_t counter() const { return counter_; }
  // Labels absorbed so far, in order.
  const std::vector<std::string>& absorbed_labels() const { return labels_; }

 private:
  Digest state_;
  std::uint64_t counter_ = 0;
  std::vector<std::string> labels_;
};

// Key of the label PRF.
class PrfKey {
 public:
  static constexpr std::size_t kSize = 32;

  PrfKey() = default;
  explicit PrfKey(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kSize) throw UsageError("PRF key must be exactly 32 bytes");
    std::copy(bytes.begin(), bytes.end(), key_.begin());
  }
  explicit PrfKey(const Digest& d) : key_(d) {}

  std::span<const std::uint8_t, kSize> bytes() const { return key_; }
  friend bool operator==(const PrfKey&, const PrfKey&) = default;

 private:
  std::array<std::uint8_t, kSize> key_{};
};

namespace detail {

template <PrimeFieldElement F>
F hash_to_field_with_prefix(std::span<const std::uint8_t> prefix, std::span<const std::uint8_t> message) {
  constexpr std::uint64_t mask = F::kBits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << F::kBits) - 1;
  for (std::uint64_t ctr = 0;; ++ctr) {
    Digest d = Hasher().update(prefix).update_u64(message.size()).update(message).update_u64(ctr).finish();
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
    v &= mask;
    if (v < F::kModulus) return F(v);
  }
}

}  // namespace detail

// r = PRF_K(label): H(K || len || label || ctr) reduced by rejection sampling.
template <PrimeFieldElement F>
F prf(const PrfKey& key, std::span<const std::uint8_t> label) {
  return detail::hash_to_field_with_prefix<F>(key.bytes(), label);
}

// Domain-separated hash of arbitrary bytes into the field.
template <PrimeFieldElement F>
F hash_to_field(std::string_view domain, std::span<const std::uint8_t> message) {
  Digest prefix = Hasher().update(kTranscriptDomain).update(domain).finish();
  return detail::hash_to_field_with_prefix<F>(prefix, message);
}

}  // namespace vck
