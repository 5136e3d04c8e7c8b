#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "vck/error.hpp"
#include "vck/polynomial.hpp"

namespace vck::hauth {

enum class GroupLevel { kBase, kTarget };

// g^e (base level) or g_t^e (after one pairing), tracked by its exponent.
// Stands in for a pairing-friendly group at desk scale; it offers no hiding.
template <class F>
struct InstrumentedGroupElement {
  F exponent{};
  GroupLevel level = GroupLevel::kBase;

  // Group operation: exponents add.
  friend InstrumentedGroupElement operator*(const InstrumentedGroupElement& a, const InstrumentedGroupElement& b) {
    return {a.exponent + b.exponent, join(a.level, b.level)};
  }
  // Exponentiation by a public scalar.
  InstrumentedGroupElement pow(F c) const { return {exponent * c, level}; }
  // e(g^a, g) = g_t^a.
  InstrumentedGroupElement to_target() const { return {exponent, GroupLevel::kTarget}; }

  friend bool operator==(const InstrumentedGroupElement&, const InstrumentedGroupElement&) = default;

 private:
  static GroupLevel join(GroupLevel a, GroupLevel b) {
    return (a == GroupLevel::kTarget || b == GroupLevel::kTarget) ? GroupLevel::kTarget : GroupLevel::kBase;
  }
};

// e(g^a, g^b) = g_t^(ab). Both inputs must still be at the base level.
template <class F>
InstrumentedGroupElement<F> pairing(const InstrumentedGroupElement<F>& a, const InstrumentedGroupElement<F>& b) {
  if (a.level != GroupLevel::kBase || b.level != GroupLevel::kBase) {
    throw UsageError("pairing inputs must be base-level elements");
  }
  return {a.exponent * b.exponent, GroupLevel::kTarget};
}

// Polynomial with the constant coefficient kept in the clear and every higher
// coefficient in the exponent: (p0, g^p1, g^p2, ...). One multiplication is
// available per lineage because it consumes the single bilinear map.
template <class F>
class GroupPolynomial {
 public:
  using Element = InstrumentedGroupElement<F>;

  GroupPolynomial() = default;
  GroupPolynomial(F constant, std::vector<Element> higher) : constant_(constant), higher_(std::move(higher)) {}

  F constant() const { return constant_; }
  const std::vector<Element>& higher() const { return higher_; }
  bool paired() const {
    return std::any_of(higher_.begin(), higher_.end(), [](const Element& e) { return e.level == GroupLevel::kTarget; });
  }
  GroupLevel level() const { return paired() ? GroupLevel::kTarget : GroupLevel::kBase; }

  friend GroupPolynomial operator+(const GroupPolynomial& a, const GroupPolynomial& b) {
    std::vector<Element> out(std::max(a.higher_.size(), b.higher_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i < a.higher_.size() && i < b.higher_.size()) {
        out[i] = a.higher_[i] * b.higher_[i];
      } else {
        out[i] = i < a.higher_.size() ? a.higher_[i] : b.higher_[i];
      }
    }
    return GroupPolynomial(a.constant_ + b.constant_, std::move(out));
  }

  friend GroupPolynomial operator+(const GroupPolynomial& a, F c) { return GroupPolynomial(a.constant_ + c, a.higher_); }

  friend GroupPolynomial operator*(const GroupPolynomial& a, F c) {
    std::vector<Element> out;
    for (const Element& e : a.higher_) out.push_back(e.pow(c));
    return GroupPolynomial(a.constant_ * c, std::move(out));
  }

  // (p0 q0, (g^pi)^q0 * (g^qi)^p0 + sum e(g^pj, g^qk), ...). Cross terms with
  // the clear constants are exponentiations; higher-by-higher products use the
  // pairing, and the whole result moves to the target group.
  friend GroupPolynomial operator*(const GroupPolynomial& a, const GroupPolynomial& b) {
    if (a.paired() || b.paired()) throw UsageError("pairing budget exhausted: only one multiplication is supported");
    const std::size_t deg = a.higher_.size() + b.higher_.size();
    std::vector<Element> out(deg, Element{F::zero(), GroupLevel::kTarget});
    for (std::size_t i = 0; i < a.higher_.size(); ++i) out[i] = out[i] * a.higher_[i].pow(b.constant_).to_target();
    for (std::size_t i = 0; i < b.higher_.size(); ++i) out[i] = out[i] * b.higher_[i].pow(a.constant_).to_target();
    for (std::size_t i = 0; i < a.higher_.size(); ++i) {
      for (std::size_t j = 0; j < b.higher_.size(); ++j) {
        out[i + j + 1] = out[i + j + 1] * pairing(a.higher_[i], b.higher_[j]);
      }
    }
    return GroupPolynomial(a.constant_ * b.constant_, std::move(out));
  }

 private:
  F constant_{};
  std::vector<Element> higher_;
};

template <class F>
GroupPolynomial<F> group_lift(const Polynomial<F>& p) {
  std::vector<InstrumentedGroupElement<F>> higher;
  for (std::size_t i = 1; i < p.size(); ++i) higher.push_back({p.coefficient(i), GroupLevel::kBase});
  return GroupPolynomial<F>(p.coefficient(0), std::move(higher));
}

// g^p0 * prod (g^pi)^(x^i), at the polynomial's level.
template <class F>
InstrumentedGroupElement<F> group_eval(const GroupPolynomial<F>& gp, F x) {
  InstrumentedGroupElement<F> acc{gp.constant(), gp.level()};
  F power = x;
  for (const auto& e : gp.higher()) {
    acc = acc * e.pow(power);
    power *= x;
  }
  return acc;
}

}  // namespace vck::hauth
