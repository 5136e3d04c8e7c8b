#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "vck/error.hpp"
#include "vck/ntt.hpp"
#include "vck/polynomial.hpp"

namespace vck {

enum class DomainKind { kExplicit, kSubgroup, kCoset };

// A finite evaluation set: an explicit list of points, a multiplicative
// subgroup <g> of power-of-two size, or a coset h<g>. Subgroup and coset
// points are ordered h*g^0, h*g^1, ..., so the negation of point i is point
// i + size/2.
template <class F>
class EvaluationDomain {
 public:
  static EvaluationDomain explicit_points(std::vector<F> points) {
    if (points.empty()) throw UsageError("domain must be nonempty");
    std::set<F> seen(points.begin(), points.end());
    if (seen.size() != points.size()) throw DomainError("domain points must be distinct");
    EvaluationDomain d;
    d.kind_ = DomainKind::kExplicit;
    d.size_ = points.size();
    d.points_ = std::move(points);
    return d;
  }

  static EvaluationDomain subgroup(std::size_t size) {
    if (size == 0 || !std::has_single_bit(size)) throw UsageError("subgroup size must be a power of two");
    EvaluationDomain d;
    d.kind_ = DomainKind::kSubgroup;
    d.size_ = size;
    d.generator_ = F::root_of_unity(size);
    return d;
  }

  static EvaluationDomain coset(std::size_t size, F offset) {
    if (offset.is_zero()) throw UsageError("coset offset must be nonzero");
    EvaluationDomain d = subgroup(size);
    d.kind_ = DomainKind::kCoset;
    d.offset_ = offset;
    return d;
  }

  DomainKind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  F generator() const { return generator_; }
  F offset() const { return offset_; }
  bool is_structured() const { return kind_ != DomainKind::kExplicit; }

  F element(std::size_t i) const {
    if (i >= size_) throw UsageError("domain index out of range");
    if (kind_ == DomainKind::kExplicit) return points_[i];
    return offset_ * generator_.pow(i);
  }

  std::vector<F> elements() const {
    if (kind_ == DomainKind::kExplicit) return points_;
    std::vector<F> out(size_);
    F cur = offset_;
    for (std::size_t i = 0; i < size_; ++i) {
      out[i] = cur;
      cur *= generator_;
    }
    return out;
  }

  bool contains(F x) const {
    if (kind_ == DomainKind::kExplicit) return std::find(points_.begin(), points_.end(), x) != points_.end();
    if (x.is_zero()) return false;
    return (x / offset_).pow(size_) == F::one();
  }

  // The image of the domain under x -> x^2 (half the size).
  EvaluationDomain squared() const {
    if (!is_structured() || size_ < 2) throw UsageError("only structured domains of size >= 2 can be squared");
    EvaluationDomain d = *this;
    d.size_ = size_ / 2;
    d.generator_ = generator_ * generator_;
    d.offset_ = offset_ * offset_;
    return d;
  }

 private:
  EvaluationDomain() = default;

  DomainKind kind_ = DomainKind::kExplicit;
  std::size_t size_ = 0;
  F generator_ = F::one();
  F offset_ = F::one();
  std::vector<F> points_;
};

// Z_D(x) = prod_{a in D} (x - a); x^n - h^n for structured domains.
template <class F>
Polynomial<F> vanishing_poly(const EvaluationDomain<F>& d) {
  if (!d.is_structured()) {
    auto pts = d.elements();
    return polynomial_from_roots<F>(pts);
  }
  std::vector<F> c(d.size() + 1);
  c[0] = -d.offset().pow(d.size());
  c[d.size()] = F::one();
  return Polynomial<F>(std::move(c));
}

// Structured domains take O(log |D|) multiplications via x^|D| - h^|D|.
template <class F>
F vanishing_eval(const EvaluationDomain<F>& d, F x) {
  if (d.is_structured()) return x.pow(d.size()) - d.offset().pow(d.size());
  F acc = F::one();
  for (const F& a : d.elements()) acc *= x - a;
  return acc;
}

// Values of p at every domain point, in domain order.
template <class F>
std::vector<F> evaluate_domain(const Polynomial<F>& p, const EvaluationDomain<F>& d) {
  if (!d.is_structured()) {
    std::vector<F> out;
    out.reserve(d.size());
    for (const F& x : d.elements()) out.push_back(p(x));
    return out;
  }
  // p(h * g^i): scale coefficients by h^k, fold modulo x^n - 1, transform.
  const std::size_t n = d.size();
  std::vector<F> folded(n);
  F power = F::one();
  const auto c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    folded[k % n] += c[k] * power;
    power *= d.offset();
  }
  ntt_with_root<F>(folded, d.generator());
  return folded;
}

// Unique polynomial of degree < |D| taking the given values on D.
template <class F>
Polynomial<F> interpolate_domain(std::span<const F> values, const EvaluationDomain<F>& d) {
  if (values.size() != d.size()) throw UsageError("value count does not match domain size");
  if (!d.is_structured()) {
    std::vector<std::pair<F, F>> pts;
    auto xs = d.elements();
    for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], values[i]);
    return interpolate<F>(pts);
  }
  std::vector<F> c(values.begin(), values.end());
  if (c.size() > 1) {
    ntt_with_root<F>(c, d.generator().inverse());
    const F n_inv = F(c.size()).inverse();
    for (F& v : c) v *= n_inv;
  }
  const F h_inv = d.offset().inverse();
  F power = F::one();
  for (F& v : c) {
    v *= power;
    power *= h_inv;
  }
  return Polynomial<F>(std::move(c));
}

}  // namespace vck
