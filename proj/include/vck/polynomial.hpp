#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/field.hpp"
#include "vck/ntt.hpp"

namespace vck {

// Degree of a polynomial; std::nullopt is the zero polynomial (degree -inf).
using Degree = std::optional<std::size_t>;

// Dense univariate polynomial, coefficients lowest degree first. Always
// normalized: the leading coefficient is nonzero, the zero polynomial is empty.
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coefficients) : c_(std::move(coefficients)) { normalize(); }

  static Polynomial from_values(std::initializer_list<std::int64_t> coefficients) {
    std::vector<F> c;
    for (auto v : coefficients) c.push_back(F::from_signed(v));
    return Polynomial(std::move(c));
  }
  static Polynomial constant(F c) { return Polynomial(std::vector<F>{c}); }
  static Polynomial monomial(F c, std::size_t k) {
    std::vector<F> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(F::one(), 1); }

  bool is_zero() const { return c_.empty(); }
  Degree degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  std::span<const F> coefficients() const { return c_; }
  std::size_t size() const { return c_.size(); }
  F coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : F::zero(); }
  F leading() const { return c_.empty() ? F::zero() : c_.back(); }

  // Horner evaluation.
  F operator()(F x) const {
    F acc = F::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // p(s * x): coefficient i scaled by s^i.
  Polynomial scale_argument(F s) const {
    std::vector<F> out(c_);
    F power = F::one();
    for (F& v : out) {
      v *= power;
      power *= s;
    }
    return Polynomial(std::move(out));
  }

  Polynomial operator-() const {
    std::vector<F> out(c_);
    for (F& v : out) v = -v;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) + b.coefficient(i);
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

  friend Polynomial operator+(const Polynomial& a, F c) {
    std::vector<F> out(a.c_);
    if (out.empty()) out.push_back(F::zero());
    out[0] += c;
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Polynomial& a, F c) {
    if (c.is_zero()) return {};
    std::vector<F> out(a.c_);
    for (F& v : out) v *= c;
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(F c, const Polynomial& a) { return a * c; }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    os << '[';
    for (std::size_t i = 0; i < p.c_.size(); ++i) os << (i ? ", " : "") << p.c_[i];
    return os << ']';
  }

  // 4-byte big-endian length followed by 8-byte elements.
  void write(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(c_.size()));
    for (const F& v : c_) v.write(w);
  }
  static Polynomial read(ByteReader& r) {
    std::uint32_t n = r.u32();
    if (n > r.remaining() / F::kByteSize) throw ParseError("polynomial length exceeds input");
    std::vector<F> c;
    c.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) c.push_back(F::read(r));
    if (!c.empty() && c.back().is_zero()) throw ParseError("polynomial not normalized");
    return Polynomial(std::move(c));
  }

 private:
  static Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const std::size_t out_size = a.c_.size() + b.c_.size() - 1;
    const std::size_t small = std::min(a.c_.size(), b.c_.size());
    const std::size_t n = std::bit_ceil(out_size);
    if (small > 32 && std::countr_zero(n) <= static_cast<int>(F::kTwoAdicity)) {
      std::vector<F> fa(a.c_), fb(b.c_);
      fa.resize(n);
      fb.resize(n);
      ntt<F>(fa);
      ntt<F>(fb);
      for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
      inverse_ntt<F>(fa);
      fa.resize(out_size);
      return Polynomial(std::move(fa));
    }
    std::vector<F> out(out_size);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  void normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<F> c_;
};

template <class F>
struct DivisionResult {
  Polynomial<F> quotient;
  Polynomial<F> remainder;
  bool exact() const { return remainder.is_zero(); }
};

// Long division. Only the divisor's nonzero coefficients are visited, so
// dividing by sparse divisors such as x^n - 1 costs O(deg(numerator)).
template <class F>
DivisionResult<F> divide(const Polynomial<F>& numerator, const Polynomial<F>& divisor) {
  if (divisor.is_zero()) throw DomainError("division by the zero polynomial");
  if (numerator.size() < divisor.size()) return {Polynomial<F>{}, numerator};
  const auto d = divisor.coefficients();
  const std::size_t m = d.size() - 1;
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < m; ++j) {
    if (!d[j].is_zero()) support.push_back(j);
  }
  const F lead_inv = d[m].inverse();
  std::vector<F> rem(numerator.coefficients().begin(), numerator.coefficients().end());
  std::vector<F> q(rem.size() - m);
  for (std::size_t i = q.size(); i-- > 0;) {
    const F coef = rem[i + m] * lead_inv;
    q[i] = coef;
    rem[i + m] = F::zero();
    if (coef.is_zero()) continue;
    for (std::size_t j : support) rem[i + j] -= coef * d[j];
  }
  rem.resize(m);
  return {Polynomial<F>(std::move(q)), Polynomial<F>(std::move(rem))};
}

// Quotient plus an exactness flag; callers reject when the remainder is
// nonzero (a constraint that does not vanish on the divisor's roots).
template <class F>
DivisionResult<F> poly_div_exact(const Polynomial<F>& numerator, const Polynomial<F>& divisor) {
  return divide(numerator, divisor);
}

// Lagrange interpolation, O(n^2).
template <class F>
Polynomial<F> interpolate(std::span<const std::pair<F, F>> points) {
  if (points.empty()) throw UsageError("interpolation needs at least one point");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) throw DomainError("duplicate interpolation node");
    }
  }
  // master(x) = prod (x - x_i), then each basis numerator is master / (x - x_i).
  std::vector<F> master{F::one()};
  for (const auto& [xi, yi] : points) {
    std::vector<F> next(master.size() + 1);
    for (std::size_t k = 0; k < master.size(); ++k) {
      next[k + 1] += master[k];
      next[k] -= master[k] * xi;
    }
    master = std::move(next);
  }
  std::vector<F> result(n);
  std::vector<F> basis(n);
  for (std::size_t i = 0; i < n; ++i) {
    const F xi = points[i].first;
    // Synthetic division of master by (x - xi).
    F carry = F::zero();
    for (std::size_t k = n; k-- > 0;) {
      carry = master[k + 1] + carry * xi;
      basis[k] = carry;
    }
    F denom = F::one();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom *= xi - points[j].first;
    }
    const F scale = points[i].second / denom;
    for (std::size_t k = 0; k < n; ++k) result[k] += basis[k] * scale;
  }
  return Polynomial<F>(std::move(result));
}

template <class F>
Polynomial<F> interpolate(std::initializer_list<std::pair<F, F>> points) {
  return interpolate<F>(std::span<const std::pair<F, F>>(points.begin(), points.size()));
}

// prod (x - r) over the given roots, via a balanced product tree.
template <class F>
Polynomial<F> polynomial_from_roots(std::span<const F> roots) {
  if (roots.empty()) return Polynomial<F>::constant(F::one());
  if (roots.size() == 1) return Polynomial<F>(std::vector<F>{-roots[0], F::one()});
  const std::size_t half = roots.size() / 2;
  return polynomial_from_roots(roots.first(half)) * polynomial_from_roots(roots.subspan(half));
}

// f(x) = f_even(x^2) + x * f_odd(x^2).
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> split(const Polynomial<F>& f) {
  std::vector<F> even, odd;
  const auto c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) (i % 2 == 0 ? even : odd).push_back(c[i]);
  return {Polynomial<F>(std::move(even)), Polynomial<F>(std::move(odd))};
}

}  // namespace vck
