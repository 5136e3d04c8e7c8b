#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/hash.hpp"
#include "vck/transcript.hpp"

namespace vck {

using BigUint = boost::multiprecision::cpp_int;

inline constexpr int kMillerRabinRounds = 40;

inline std::size_t bit_length(const BigUint& v) {
  return v == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

inline Bytes to_bytes_be(const BigUint& v) {
  Bytes out;
  boost::multiprecision::export_bits(v, std::back_inserter(out), 8);
  if (v == 0) out.assign(1, 0);
  return out;
}

inline BigUint from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigUint v;
  if (bytes.empty()) return v;
  boost::multiprecision::import_bits(v, bytes.begin(), bytes.end(), 8);
  return v;
}

// 4-byte big-endian length prefix, then the minimal big-endian magnitude.
inline void write_biguint(ByteWriter& w, const BigUint& v) { w.blob(to_bytes_be(v)); }
inline BigUint read_biguint(ByteReader& r) { return from_bytes_be(r.blob()); }

// Miller-Rabin with a fixed-seed witness generator, so primality verdicts are
// reproducible between prover and verifier.
inline bool is_probable_prime(const BigUint& n, int rounds = kMillerRabinRounds) {
  if (n < 2) return false;
  std::mt19937_64 witnesses(0x5eed'cafe'f00d'1234ULL);
  return boost::multiprecision::miller_rabin_test(n, static_cast<unsigned>(rounds), witnesses);
}

inline BigUint mod_pow(const BigUint& base, const BigUint& exp, const BigUint& modulus) {
  return boost::multiprecision::powm(base, exp, modulus);
}

// Representative of v in the quotient group Z_N^* / {+-1}.
inline BigUint normalize_pm(const BigUint& v, const BigUint& n) {
  BigUint r = v % n;
  BigUint neg = n - r;
  return r <= neg ? r : neg;
}

// Counter-mode hash into Z_N^*/{+-1}: candidates H(x || ctr) expanded to
// |N| + 64 bits and reduced mod N; the first unit wins.
inline BigUint hash_to_group(std::span<const std::uint8_t> x, const BigUint& n) {
  if (n < 6) throw UsageError("group modulus must be at least 6");
  const std::size_t want_bytes = (bit_length(n) + 64 + 7) / 8;
  for (std::uint32_t ctr = 0; ctr < (1u << 16); ++ctr) {
    Bytes stream;
    for (std::uint32_t block = 0; stream.size() < want_bytes; ++block) {
      Digest d = Hasher()
                     .update("vc-kit/v1/hash-to-group")
                     .update_u64(x.size())
                     .update(x)
                     .update_u64(ctr)
                     .update_u64(block)
                     .finish();
      stream.insert(stream.end(), d.begin(), d.end());
    }
    stream.resize(want_bytes);
    BigUint v = from_bytes_be(stream) % n;
    if (v != 0 && boost::multiprecision::gcd(v, n) == 1) return normalize_pm(v, n);
  }
  throw InternalError("hash_to_group: no unit found within 2^16 candidates");
}

// Draws a `bits`-bit candidate from the transcript (top bit forced, made
// odd) and steps by two until Miller-Rabin accepts. A candidate that would
// leave the bit range triggers a fresh draw.
inline BigUint challenge_prime(Transcript& t, std::size_t bits) {
  if (bits < 16) throw UsageError("challenge primes need at least 16 bits");
  const BigUint top = BigUint(1) << (bits - 1);
  const BigUint limit = BigUint(1) << bits;
  for (;;) {
    Bytes raw = t.challenge_bytes((bits + 7) / 8);
    BigUint c = from_bytes_be(raw) % limit;
    c |= top;
    c |= 1;
    for (; c < limit; c += 2) {
      if (is_probable_prime(c)) return c;
    }
  }
}

}  // namespace vck
