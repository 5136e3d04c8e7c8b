#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>

#include "vck/bytes.hpp"
#include "vck/field.hpp"

namespace vck {

// Sparse polynomial in two variables; zero coefficients are never stored.
template <class F>
class BivariatePolynomial {
 public:
  using Exponents = std::pair<std::uint32_t, std::uint32_t>;

  BivariatePolynomial() = default;

  static BivariatePolynomial constant(F c) { return term(c, 0, 0); }
  static BivariatePolynomial term(F c, std::uint32_t i, std::uint32_t j) {
    BivariatePolynomial p;
    p.add_term(c, i, j);
    return p;
  }

  void add_term(F c, std::uint32_t i, std::uint32_t j) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<Exponents, F>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  F coefficient(std::uint32_t i, std::uint32_t j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? F::zero() : it->second;
  }
  // Largest exponent of the given variable (0 for x, 1 for y).
  std::uint32_t degree_in(int variable) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, variable == 0 ? e.first : e.second);
    return d;
  }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }

  F operator()(F x, F y) const {
    F acc = F::zero();
    for (const auto& [e, c] : terms_) acc += c * x.pow(e.first) * y.pow(e.second);
    return acc;
  }

  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(c, e.first, e.second);
    return out;
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(ca * cb, ea.first + eb.first, ea.second + eb.second);
    }
    return out;
  }
  friend BivariatePolynomial operator+(const BivariatePolynomial& a, F c) { return a + constant(c); }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, F c) {
    BivariatePolynomial out;
    for (const auto& [e, v] : a.terms_) out.add_term(v * c, e.first, e.second);
    return out;
  }

  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

  // 4-byte term count, then (4-byte i, 4-byte j, 8-byte coefficient) per term.
  void write(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(terms_.size()));
    for (const auto& [e, c] : terms_) {
      w.u32(e.first);
      w.u32(e.second);
      c.write(w);
    }
  }
  static BivariatePolynomial read(ByteReader& r) {
    std::uint32_t n = r.u32();
    if (n > r.remaining() / 16) throw ParseError("bivariate term count exceeds input");
    BivariatePolynomial p;
    for (std::uint32_t k = 0; k < n; ++k) {
      auto i = r.u32();
      auto j = r.u32();
      F c = F::read(r);
      if (c.is_zero() || p.terms_.contains({i, j})) throw ParseError("bivariate polynomial not canonical");
      p.terms_.emplace(Exponents{i, j}, c);
    }
    return p;
  }

 private:
  std::map<Exponents, F> terms_;
};

}  // namespace vck
