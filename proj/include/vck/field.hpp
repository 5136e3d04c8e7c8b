#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>

#include "vck/bytes.hpp"
#include "vck/error.hpp"

namespace vck {

namespace detail {

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline constexpr std::array<std::uint64_t, 40> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

// Miller-Rabin over the first `rounds` primes as witnesses. Usable at compile
// time, so every field modulus is checked when the field type is instantiated.
constexpr bool is_prime_u64(std::uint64_t n, int rounds = 40) {
  if (n < 2) return false;
  for (int i = 0; i < rounds; ++i) {
    if (n == kSmallPrimes[i]) return true;
    if (n % kSmallPrimes[i] == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (int i = 0; i < rounds; ++i) {
    std::uint64_t x = pow_mod(kSmallPrimes[i], d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

constexpr unsigned two_adicity(std::uint64_t p) { return static_cast<unsigned>(std::countr_zero(p - 1)); }

// Smallest generator of F_p^*: g^((p-1)/q) != 1 for every prime q | p-1.
// Trial-divides p-1, which is instant for the 2-smooth-heavy moduli we use.
constexpr std::uint64_t find_generator(std::uint64_t p) {
  std::array<std::uint64_t, 64> factors{};
  int count = 0;
  std::uint64_t rest = p - 1;
  for (std::uint64_t q = 2; q * q <= rest; ++q) {
    if (rest % q == 0) {
      factors[count++] = q;
      while (rest % q == 0) rest /= q;
    }
  }
  if (rest > 1) factors[count++] = rest;
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (int i = 0; i < count; ++i) {
      if (pow_mod(g, (p - 1) / factors[i], p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 0;
}

inline std::uint64_t& field_op_slot() {
  thread_local std::uint64_t count = 0;
  return count;
}

}  // namespace detail

// Counts field additions, subtractions, multiplications and inversions made
// on the current thread while the scope is alive. Exponentiation counts its
// individual multiplications.
class FieldOpScope {
 public:
  FieldOpScope() : start_(detail::field_op_slot()) {}
  std::uint64_t count() const { return detail::field_op_slot() - start_; }

 private:
  std::uint64_t start_;
};

// Element of the prime field F_P. The modulus is a compile-time parameter so
// every element of one field shares it without storing it.
template <std::uint64_t P>
class Fp {
  static_assert(P > 2 && P < (std::uint64_t{1} << 62), "modulus out of supported range");
  static_assert(detail::is_prime_u64(P), "field modulus must be prime");

 public:
  static constexpr std::uint64_t kModulus = P;
  static constexpr std::uint64_t kGenerator = detail::find_generator(P);
  static constexpr unsigned kTwoAdicity = detail::two_adicity(P);
  static constexpr unsigned kBits = static_cast<unsigned>(std::bit_width(P));
  static constexpr std::size_t kByteSize = 8;

  constexpr Fp() = default;
  constexpr explicit Fp(std::uint64_t v) : v_(v % P) {}

  static constexpr Fp zero() { return Fp(); }
  static constexpr Fp one() { return Fp(1); }
  static Fp from_signed(std::int64_t v) {
    auto m = static_cast<std::int64_t>(v % static_cast<std::int64_t>(P));
    return Fp(static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(P) : m));
  }
  static constexpr Fp generator() { return Fp(kGenerator); }

  // Primitive root of unity of the given power-of-two order.
  static Fp root_of_unity(std::uint64_t order) {
    if (order == 0 || !std::has_single_bit(order) || std::countr_zero(order) > static_cast<int>(kTwoAdicity)) {
      throw DomainError("no root of unity of order " + std::to_string(order) + " in F_" + std::to_string(P));
    }
    return Fp(detail::pow_mod(kGenerator, (P - 1) / order, P));
  }

  template <class Rng>
  static Fp random(Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, P - 1);
    return Fp(dist(rng));
  }

  constexpr std::uint64_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  Fp operator+(Fp o) const {
    ++detail::field_op_slot();
    std::uint64_t s = v_ + o.v_;
    return raw(s >= P ? s - P : s);
  }
  Fp operator-(Fp o) const {
    ++detail::field_op_slot();
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : P - v_); }
  Fp operator*(Fp o) const {
    ++detail::field_op_slot();
    if constexpr (P < (std::uint64_t{1} << 32)) {
      return raw(v_ * o.v_ % P);
    } else {
      return raw(detail::mul_mod(v_, o.v_, P));
    }
  }
  Fp operator/(Fp o) const { return *this * o.inverse(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }

  // Extended Euclid.
  Fp inverse() const {
    if (v_ == 0) throw DomainError("inverse of zero");
    ++detail::field_op_slot();
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(P), new_r = static_cast<std::int64_t>(v_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return from_signed(t);
  }

  Fp pow(std::uint64_t exp) const {
    Fp result = one();
    Fp base = *this;
    while (exp > 0) {
      if (exp & 1) result *= base;
      exp >>= 1;
      if (exp > 0) base *= base;
    }
    return result;
  }

  friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(Fp a, Fp b) { return a.v_ <=> b.v_; }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

  // 8-byte big-endian encoding.
  void write(ByteWriter& w) const { w.u64(v_); }
  static Fp read(ByteReader& r) {
    std::uint64_t v = r.u64();
    if (v >= P) throw ParseError("field element not reduced");
    return raw(v);
  }

 private:
  static constexpr Fp raw(std::uint64_t v) {
    Fp out;
    out.v_ = v;
    return out;
  }

  std::uint64_t v_ = 0;
};

// 3 * 2^30 + 1: two-adicity 30, enough for every desk-scale domain.
using DefaultField = Fp<3221225473ULL>;
using F13 = Fp<13>;
using F17 = Fp<17>;
using F97 = Fp<97>;

template <class F>
concept PrimeFieldElement = requires(F a, std::uint64_t e) {
  { F::kModulus } -> std::convertible_to<std::uint64_t>;
  { a * a } -> std::same_as<F>;
  { a.inverse() } -> std::same_as<F>;
  { a.pow(e) } -> std::same_as<F>;
};

template <class F>
Bytes encode_elements(std::span<const F> values) {
  ByteWriter w;
  for (const F& v : values) v.write(w);
  return std::move(w).bytes();
}

}  // namespace vck
