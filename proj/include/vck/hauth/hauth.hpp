#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "vck/bivariate.hpp"
#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/hauth/circuit.hpp"
#include "vck/polynomial.hpp"
#include "vck/transcript.hpp"

namespace vck::hauth {

// Multi-label L = (l, delta): a constant part and a changing part.
struct MultiLabel {
  Bytes l;
  Bytes delta;

  friend auto operator<=>(const MultiLabel&, const MultiLabel&) = default;
};

template <class F>
struct AuthKey {
  F sk;
  PrfKey prf_key;

  // sk is hashed from the seed, rejecting zero; the PRF key uses an
  // independent label.
  static AuthKey keygen(std::span<const std::uint8_t> seed) {
    AuthKey k;
    for (std::uint64_t ctr = 0;; ++ctr) {
      ByteWriter w;
      w.raw(seed);
      w.u64(ctr);
      k.sk = hash_to_field<F>("hauth/sk", w.bytes());
      if (!k.sk.is_zero()) break;
    }
    k.prf_key = PrfKey(Hasher().update("vc-kit/v1/hauth/prf").update_u64(seed.size()).update(seed).finish());
    return k;
  }

  void write(ByteWriter& w) const {
    w.u64(F::kModulus);
    sk.write(w);
    w.raw(prf_key.bytes());
  }
  static AuthKey read(ByteReader& r) {
    if (r.u64() != F::kModulus) throw ParseError("key belongs to a different field");
    AuthKey k;
    k.sk = F::read(r);
    if (k.sk.is_zero()) throw ParseError("secret key must be nonzero");
    k.prf_key = PrfKey(r.raw(PrfKey::kSize));
    return k;
  }

  friend bool operator==(const AuthKey&, const AuthKey&) = default;
};

// PRF1_K(l) and PRF2_K(delta), domain-separated by a one-byte prefix.
template <class F>
F prf_constant_part(const AuthKey<F>& key, std::span<const std::uint8_t> l) {
  Bytes msg{0x01};
  msg.insert(msg.end(), l.begin(), l.end());
  return prf<F>(key.prf_key, msg);
}

template <class F>
F prf_changing_part(const AuthKey<F>& key, std::span<const std::uint8_t> delta) {
  Bytes msg{0x02};
  msg.insert(msg.end(), delta.begin(), delta.end());
  return prf<F>(key.prf_key, msg);
}

// r = PRF1_K(l) + PRF2_K(delta). The additive merge is what makes the
// amortized Load below exact.
template <class F>
F label_randomness(const AuthKey<F>& key, const MultiLabel& label) {
  return prf_constant_part(key, label.l) + prf_changing_part(key, label.delta);
}

// Single-key tag: the degree-1 polynomial through (0, m) and (sk, r).
template <class F>
struct Tag {
  Polynomial<F> poly;

  friend bool operator==(const Tag&, const Tag&) = default;
};

// Two-party tag: a polynomial in (x, y), x belonging to slot 0 and y to slot 1.
template <class F>
struct MultiKeyTag {
  BivariatePolynomial<F> poly;

  friend bool operator==(const MultiKeyTag&, const MultiKeyTag&) = default;
};

// (m, (r - m) / sk).
template <class F>
Tag<F> interpolate_tag(F sk, F m, F r) {
  if (sk.is_zero()) throw UsageError("secret key must be nonzero");
  return {Polynomial<F>(std::vector<F>{m, (r - m) / sk})};
}

enum class VerifyStatus { kAccepted, kKeyCheckFailed, kOutputCheckFailed, kDegreeCheckFailed };

inline const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kAccepted: return "accepted";
    case VerifyStatus::kKeyCheckFailed: return "key-check failed";
    case VerifyStatus::kOutputCheckFailed: return "output-check failed";
    case VerifyStatus::kDegreeCheckFailed: return "degree-check failed";
  }
  return "unknown";
}

// Holds a key and the labels it has authenticated. A label is never signed
// twice; the registry lives for the session only.
template <class F>
class Authenticator {
 public:
  explicit Authenticator(AuthKey<F> key) : key_(std::move(key)) {}

  const AuthKey<F>& key() const { return key_; }

  Tag<F> auth(F m, const MultiLabel& label) {
    if (!used_.insert(label).second) throw UsageError("label already used under this key");
    return interpolate_tag(key_.sk, m, label_randomness(key_, label));
  }

  bool used(const MultiLabel& label) const { return used_.contains(label); }

 private:
  AuthKey<F> key_;
  std::set<MultiLabel> used_;
};

template <class F>
Tag<F> eval(const Circuit<F>& circuit, std::span<const Tag<F>> tags) {
  std::vector<Polynomial<F>> polys;
  polys.reserve(tags.size());
  for (const auto& t : tags) polys.push_back(t.poly);
  return {circuit.template evaluate<Polynomial<F>>(polys)};
}

namespace detail {

template <class F>
VerifyStatus check_tag(const Polynomial<F>& tag, F sk, F expected_at_sk, F claimed_y, std::size_t degree_bound) {
  if (tag.degree().value_or(0) > degree_bound) return VerifyStatus::kDegreeCheckFailed;
  if (tag(sk) != expected_at_sk) return VerifyStatus::kKeyCheckFailed;
  if (tag(F::zero()) != claimed_y) return VerifyStatus::kOutputCheckFailed;
  return VerifyStatus::kAccepted;
}

}  // namespace detail

// Accepts iff tag(sk) = f(r_1, ..., r_n), tag(0) = claimed_y and the tag
// degree does not exceed the circuit's syntactic degree.
template <class F>
VerifyStatus verify(const AuthKey<F>& key, const Circuit<F>& circuit, std::span<const MultiLabel> labels,
                    const Tag<F>& tag, F claimed_y) {
  if (labels.size() != circuit.num_inputs()) throw UsageError("label count does not match circuit inputs");
  std::vector<F> r;
  r.reserve(labels.size());
  for (const auto& l : labels) r.push_back(label_randomness(key, l));
  const F expected = circuit.template evaluate<F>(r);
  return detail::check_tag(tag.poly, key.sk, expected, claimed_y, circuit.degree());
}

// ---------------------------------------------------------------------------
// Two-party multi-key scheme.

// Fresh tag for `slot` (0 -> variable x, 1 -> variable y).
template <class F>
MultiKeyTag<F> auth_mk_with_randomness(F sk, F m, F r, int slot) {
  if (slot != 0 && slot != 1) throw UsageError("multi-key slot must be 0 or 1");
  auto single = interpolate_tag(sk, m, r);
  MultiKeyTag<F> t;
  t.poly.add_term(single.poly.coefficient(0), 0, 0);
  t.poly.add_term(single.poly.coefficient(1), slot == 0 ? 1 : 0, slot == 1 ? 1 : 0);
  return t;
}

template <class F>
MultiKeyTag<F> auth_mk(const AuthKey<F>& key, F m, const MultiLabel& label, int slot) {
  return auth_mk_with_randomness(key.sk, m, label_randomness(key, label), slot);
}

// Binds one key per variable and refuses label reuse per key.
template <class F>
class MultiKeySession {
 public:
  void bind(int slot, const AuthKey<F>& key) {
    check_slot(slot);
    auto& s = slots_[static_cast<std::size_t>(slot)];
    if (s && !(*s == key)) throw UsageError("slot already bound to a different key");
    s = key;
  }

  MultiKeyTag<F> auth(const AuthKey<F>& key, F m, const MultiLabel& label, int slot) {
    bind(slot, key);
    if (!used_[static_cast<std::size_t>(slot)].insert(label).second) {
      throw UsageError("label already used under this key");
    }
    return auth_mk(key, m, label, slot);
  }

 private:
  static void check_slot(int slot) {
    if (slot != 0 && slot != 1) throw UsageError("multi-key slot must be 0 or 1");
  }

  std::array<std::optional<AuthKey<F>>, 2> slots_;
  std::array<std::set<MultiLabel>, 2> used_;
};

template <class F>
MultiKeyTag<F> eval_mk(const Circuit<F>& circuit, std::span<const MultiKeyTag<F>> tags) {
  std::vector<BivariatePolynomial<F>> polys;
  for (const auto& t : tags) polys.push_back(t.poly);
  return {circuit.template evaluate<BivariatePolynomial<F>>(polys)};
}

struct SlottedLabel {
  MultiLabel label;
  int slot;
};

// Needs both parties' keys: checks tag(sk_a, sk_b) = f(r) and tag(0, 0) = y.
template <class F>
VerifyStatus verify_mk(const AuthKey<F>& key_a, const AuthKey<F>& key_b, const Circuit<F>& circuit,
                       std::span<const SlottedLabel> labels, const MultiKeyTag<F>& tag, F claimed_y) {
  if (labels.size() != circuit.num_inputs()) throw UsageError("label count does not match circuit inputs");
  std::vector<F> r;
  for (const auto& sl : labels) {
    if (sl.slot != 0 && sl.slot != 1) throw UsageError("multi-key slot must be 0 or 1");
    r.push_back(label_randomness(sl.slot == 0 ? key_a : key_b, sl.label));
  }
  if (tag.poly.total_degree() > circuit.degree()) return VerifyStatus::kDegreeCheckFailed;
  if (tag.poly(key_a.sk, key_b.sk) != circuit.template evaluate<F>(r)) return VerifyStatus::kKeyCheckFailed;
  if (tag.poly(F::zero(), F::zero()) != claimed_y) return VerifyStatus::kOutputCheckFailed;
  return VerifyStatus::kAccepted;
}

// ---------------------------------------------------------------------------
// Amortized verification over labels sharing one delta.

// C(Z) = f(PRF1(l_1) + Z, ..., PRF1(l_n) + Z). Evaluating C at
// Z = PRF2(delta) gives f(r_1, ..., r_n).
template <class F>
struct AmortizedPrecompute {
  Polynomial<F> c;
  std::size_t degree_bound = 0;
};

template <class F>
AmortizedPrecompute<F> amortize_offline(const AuthKey<F>& key, const Circuit<F>& circuit,
                                        std::span<const Bytes> l_parts) {
  if (circuit.mul_depth() > 1) throw UsageError("amortized verification supports multiplicative depth <= 1");
  if (l_parts.size() != circuit.num_inputs()) throw UsageError("label count does not match circuit inputs");
  std::vector<Polynomial<F>> placeholders;
  for (const Bytes& l : l_parts) {
    placeholders.push_back(Polynomial<F>(std::vector<F>{prf_constant_part(key, l), F::one()}));
  }
  return {circuit.template evaluate<Polynomial<F>>(placeholders), circuit.degree()};
}

// O(deg C) online work.
template <class F>
F load(const AmortizedPrecompute<F>& pre, const AuthKey<F>& key, std::span<const std::uint8_t> delta) {
  return pre.c(prf_changing_part(key, delta));
}

template <class F>
VerifyStatus verify_amortized(const AmortizedPrecompute<F>& pre, const AuthKey<F>& key,
                              std::span<const std::uint8_t> delta, const Tag<F>& tag, F claimed_y) {
  return detail::check_tag(tag.poly, key.sk, load(pre, key, delta), claimed_y, pre.degree_bound);
}

// ---------------------------------------------------------------------------
// Wire format: 1-byte arity header, then the polynomial encoding.

template <class F>
Bytes serialize_tag(const Tag<F>& t) {
  ByteWriter w;
  w.u8(1);
  w.u64(F::kModulus);
  t.poly.write(w);
  return std::move(w).bytes();
}

template <class F>
Bytes serialize_tag(const MultiKeyTag<F>& t) {
  ByteWriter w;
  w.u8(2);
  w.u64(F::kModulus);
  t.poly.write(w);
  return std::move(w).bytes();
}

template <class F>
Tag<F> parse_tag(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.u8() != 1) throw ParseError("expected a single-key tag");
  if (r.u64() != F::kModulus) throw ParseError("tag belongs to a different field");
  Tag<F> t{Polynomial<F>::read(r)};
  r.expect_done();
  return t;
}

template <class F>
MultiKeyTag<F> parse_mk_tag(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.u8() != 2) throw ParseError("expected a multi-key tag");
  if (r.u64() != F::kModulus) throw ParseError("tag belongs to a different field");
  MultiKeyTag<F> t{BivariatePolynomial<F>::read(r)};
  r.expect_done();
  return t;
}

}  // namespace vck::hauth
