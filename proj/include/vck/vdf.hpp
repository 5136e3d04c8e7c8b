#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <span>

#include "vck/bigint.hpp"
#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/transcript.hpp"

namespace vck::vdf {

inline constexpr std::size_t kDefaultLambda = 16;

struct VdfParams {
  BigUint n;
  BigUint t;
  std::size_t lambda = kDefaultLambda;

  std::size_t challenge_bits() const { return 2 * lambda; }

  void write(ByteWriter& w) const {
    write_biguint(w, n);
    write_biguint(w, t);
    w.u32(static_cast<std::uint32_t>(lambda));
  }
  static VdfParams read(ByteReader& r) {
    VdfParams p;
    p.n = read_biguint(r);
    p.t = read_biguint(r);
    p.lambda = r.u32();
    if (p.n < 6) throw ParseError("VDF modulus must be at least 6");
    if (p.lambda < 8) throw ParseError("VDF lambda must be at least 8");
    return p;
  }
  friend bool operator==(const VdfParams&, const VdfParams&) = default;
};

struct TrapdoorKey {
  BigUint p;
  BigUint q;
  BigUint phi;

  void write(ByteWriter& w) const {
    write_biguint(w, p);
    write_biguint(w, q);
  }
  static TrapdoorKey read(ByteReader& r) {
    TrapdoorKey k;
    k.p = read_biguint(r);
    k.q = read_biguint(r);
    k.phi = (k.p - 1) * (k.q - 1);
    return k;
  }
  friend bool operator==(const TrapdoorKey&, const TrapdoorKey&) = default;
};

struct VdfProof {
  BigUint y;
  BigUint pi;
  BigUint r;

  friend bool operator==(const VdfProof&, const VdfProof&) = default;
};

// Group operations performed, for cost accounting.
struct OpCounter {
  std::uint64_t squarings = 0;
  std::uint64_t multiplications = 0;

  std::uint64_t total() const { return squarings + multiplications; }
};

enum class VerifyStatus { kAccepted, kChallengeMismatch, kEquationFailed, kMalformed };

inline const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kAccepted: return "accepted";
    case VerifyStatus::kChallengeMismatch: return "challenge mismatch";
    case VerifyStatus::kEquationFailed: return "equation check failed";
    case VerifyStatus::kMalformed: return "malformed proof";
  }
  return "unknown";
}

namespace detail {

inline BigUint draw_prime(Transcript& t, std::size_t bits) {
  const BigUint limit = BigUint(1) << bits;
  const BigUint top2 = BigUint(3) << (bits - 2);
  for (;;) {
    BigUint c = from_bytes_be(t.challenge_bytes((bits + 7) / 8)) % limit;
    c |= top2;
    c |= 1;
    for (; c < limit; c += 2) {
      if (is_probable_prime(c)) return c;
    }
  }
}

inline void require_unit(const BigUint& x, const BigUint& n) {
  if (x == 0 || x >= n || boost::multiprecision::gcd(x, n) != 1) {
    throw UsageError("VDF input must be a unit modulo N");
  }
}

inline std::uint64_t small_t(const BigUint& t) {
  if (t > std::numeric_limits<std::uint64_t>::max()) throw UsageError("T too large for sequential evaluation");
  return static_cast<std::uint64_t>(t);
}

// Left-to-right square-and-multiply, counting each group operation.
inline BigUint counted_pow(const BigUint& base, const BigUint& exp, const BigUint& n, OpCounter* ops) {
  BigUint acc = 1;
  const std::size_t bits = bit_length(exp);
  for (std::size_t i = bits; i-- > 0;) {
    acc = acc * acc % n;
    if (ops) ++ops->squarings;
    if (boost::multiprecision::bit_test(exp, static_cast<unsigned>(i))) {
      acc = acc * base % n;
      if (ops) ++ops->multiplications;
    }
  }
  return acc;
}

}  // namespace detail

// N = p * q from two distinct primes of `prime_bits` bits (top two bits set,
// so N has exactly 2 * prime_bits bits). Deterministic in the seed.
inline std::pair<VdfParams, TrapdoorKey> setup(std::size_t prime_bits, std::span<const std::uint8_t> seed,
                                               const BigUint& t = 0, std::size_t lambda = kDefaultLambda) {
  if (prime_bits < 8) throw UsageError("VDF primes need at least 8 bits");
  Transcript tr("vdf/setup");
  tr.absorb_u64("bits", prime_bits);
  tr.absorb("seed", seed);
  BigUint p = detail::draw_prime(tr, prime_bits);
  BigUint q;
  do {
    q = detail::draw_prime(tr, prime_bits);
  } while (q == p);
  TrapdoorKey key{p, q, (p - 1) * (q - 1)};
  return {VdfParams{p * q, t, lambda}, key};
}

// x' -> x'^(2^T) by T squarings.
inline BigUint eval_sequential(const VdfParams& params, const BigUint& x, OpCounter* ops = nullptr) {
  detail::require_unit(x, params.n);
  const std::uint64_t t = detail::small_t(params.t);
  BigUint y = x;
  for (std::uint64_t i = 0; i < t; ++i) y = y * y % params.n;
  if (ops) ops->squarings += t;
  return normalize_pm(y, params.n);
}

inline BigUint eval_trapdoor(const TrapdoorKey& key, const VdfParams& params, const BigUint& x) {
  if (key.p * key.q != params.n) throw UsageError("trapdoor does not match the modulus");
  detail::require_unit(x, params.n);
  const BigUint e = mod_pow(2, params.t, key.phi);
  return normalize_pm(mod_pow(x, e, params.n), params.n);
}

// pi = x'^floor(2^T / r) by on-the-fly long division: at most 2T group
// operations and no knowledge of phi(N).
inline BigUint prove(const VdfParams& params, const BigUint& x, const BigUint& r, OpCounter* ops = nullptr) {
  if (r < 3 || !is_probable_prime(r)) throw UsageError("VDF challenge must be a prime >= 3");
  detail::require_unit(x, params.n);
  const std::uint64_t t = detail::small_t(params.t);
  BigUint b = 1;
  BigUint pi = 1;
  for (std::uint64_t i = 0; i < t; ++i) {
    b <<= 1;
    pi = pi * pi % params.n;
    if (ops) ++ops->squarings;
    if (b >= r) {
      b -= r;
      pi = pi * x % params.n;
      if (ops) ++ops->multiplications;
    }
  }
  return normalize_pm(pi, params.n);
}

// Same pi from the trapdoor: x'^((2^T - residue) / r mod phi).
inline BigUint prove_trapdoor(const TrapdoorKey& key, const VdfParams& params, const BigUint& x, const BigUint& r) {
  if (key.p * key.q != params.n) throw UsageError("trapdoor does not match the modulus");
  detail::require_unit(x, params.n);
  const BigUint residue = mod_pow(2, params.t, r);
  const BigUint e = mod_pow(2, params.t, r * key.phi);
  const BigUint q = (e - residue) / r;
  return normalize_pm(mod_pow(x, q, params.n), params.n);
}

// Fiat-Shamir prime over (N, T, x', y) in normalized form.
inline BigUint challenge(const VdfParams& params, const BigUint& x, const BigUint& y) {
  Transcript tr("vdf");
  ByteWriter w;
  write_biguint(w, params.n);
  write_biguint(w, params.t);
  write_biguint(w, normalize_pm(x, params.n));
  write_biguint(w, normalize_pm(y, params.n));
  tr.absorb("statement", w.bytes());
  return challenge_prime(tr, params.challenge_bits());
}

// Checks pi^r * x'^(2^T mod r) = +-y for a given r.
inline VerifyStatus verify_with_challenge(const VdfParams& params, const BigUint& x, const BigUint& y,
                                          const BigUint& pi, const BigUint& r, OpCounter* ops = nullptr) {
  const BigUint& n = params.n;
  for (const BigUint* v : {&x, &y, &pi}) {
    if (*v == 0 || *v >= n || boost::multiprecision::gcd(*v, n) != 1) return VerifyStatus::kMalformed;
  }
  if (r < 3) return VerifyStatus::kMalformed;
  const BigUint residue = mod_pow(2, params.t, r);
  BigUint lhs = detail::counted_pow(pi, r, n, ops) * detail::counted_pow(x, residue, n, ops) % n;
  if (ops) ++ops->multiplications;
  return normalize_pm(lhs, n) == normalize_pm(y, n) ? VerifyStatus::kAccepted : VerifyStatus::kEquationFailed;
}

inline VerifyStatus verify(const VdfParams& params, const BigUint& x, const VdfProof& proof,
                           OpCounter* ops = nullptr) {
  if (params.n < 6) return VerifyStatus::kMalformed;
  if (proof.y == 0 || proof.y >= params.n) return VerifyStatus::kMalformed;
  if (challenge(params, x, proof.y) != proof.r) return VerifyStatus::kChallengeMismatch;
  return verify_with_challenge(params, x, proof.y, proof.pi, proof.r, ops);
}

// Evaluate, derive the challenge and prove.
inline VdfProof evaluate_and_prove(const VdfParams& params, const BigUint& x, OpCounter* ops = nullptr) {
  VdfProof proof;
  proof.y = eval_sequential(params, x, ops);
  proof.r = challenge(params, x, proof.y);
  proof.pi = prove(params, x, proof.r, ops);
  return proof;
}

// Beacon round: the input bytes are hashed into the group first.
inline VdfProof vdf_round(const VdfParams& params, std::span<const std::uint8_t> input, OpCounter* ops = nullptr) {
  return evaluate_and_prove(params, hash_to_group(input, params.n), ops);
}

// Squarings per second measured over roughly `budget` of wall-clock time.
inline double calibrate_squarings_per_second(const BigUint& n, std::chrono::milliseconds budget) {
  using clock = std::chrono::steady_clock;
  BigUint y = 3;
  std::uint64_t count = 0;
  const auto start = clock::now();
  auto elapsed = clock::duration::zero();
  while (elapsed < budget) {
    for (int i = 0; i < 1024; ++i) y = y * y % n;
    count += 1024;
    elapsed = clock::now() - start;
  }
  return static_cast<double>(count) / std::chrono::duration<double>(elapsed).count();
}

// Proof wire format: length-prefixed big-endian N, T, x', y, pi, r.
inline void write_proof(ByteWriter& w, const VdfParams& params, const BigUint& x, const VdfProof& proof) {
  for (const BigUint* v : {&params.n, &params.t, &x, &proof.y, &proof.pi, &proof.r}) write_biguint(w, *v);
}

struct ProofFile {
  BigUint n, t, x;
  VdfProof proof;
};

inline ProofFile read_proof(ByteReader& r) {
  ProofFile f;
  f.n = read_biguint(r);
  f.t = read_biguint(r);
  f.x = read_biguint(r);
  f.proof.y = read_biguint(r);
  f.proof.pi = read_biguint(r);
  f.proof.r = read_biguint(r);
  return f;
}

}  // namespace vck::vdf
