#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/hash.hpp"
#include "vck/polynomial.hpp"

namespace vck::stark {

// Trace cell relative to the current row: column `column` of row i + offset.
struct Cell {
  std::uint32_t offset = 0;
  std::uint32_t column = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

template <class F>
struct Term {
  F coefficient;
  std::vector<std::pair<Cell, std::uint32_t>> powers;  // (cell, exponent)

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [cell, e] : powers) d += e;
    return d;
  }
};

// Sparse multivariate polynomial over the cells of a row window.
template <class F>
class WindowPredicate {
 public:
  WindowPredicate& add(F coefficient, std::vector<std::pair<Cell, std::uint32_t>> powers = {}) {
    terms_.push_back({coefficient, std::move(powers)});
    return *this;
  }

  std::span<const Term<F>> terms() const { return terms_; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.degree());
    return d;
  }

  std::uint32_t window() const {
    std::uint32_t w = 1;
    for (const auto& t : terms_)
      for (const auto& [cell, e] : t.powers) w = std::max(w, cell.offset + 1);
    return w;
  }

  std::uint32_t max_column() const {
    std::uint32_t c = 0;
    for (const auto& t : terms_)
      for (const auto& [cell, e] : t.powers) c = std::max(c, cell.column);
    return c;
  }

  // `value(cell)` supplies field elements or polynomials; `one` is the
  // multiplicative identity of that type.
  template <class V, class Lookup>
  V evaluate(Lookup&& value, const V& one) const {
    V acc = one * F::zero();
    for (const auto& t : terms_) {
      V prod = one * t.coefficient;
      for (const auto& [cell, e] : t.powers)
        for (std::uint32_t k = 0; k < e; ++k) prod = prod * value(cell);
      acc = acc + prod;
    }
    return acc;
  }

  void write(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(terms_.size()));
    for (const auto& t : terms_) {
      t.coefficient.write(w);
      w.u32(static_cast<std::uint32_t>(t.powers.size()));
      for (const auto& [cell, e] : t.powers) {
        w.u32(cell.offset);
        w.u32(cell.column);
        w.u32(e);
      }
    }
  }

 private:
  std::vector<Term<F>> terms_;
};

// prod_i (cell - c_i), expanded: the cell must take one of the listed values.
template <class F>
WindowPredicate<F> membership_predicate(Cell cell, std::span<const F> allowed) {
  auto poly = polynomial_from_roots<F>(allowed);
  WindowPredicate<F> p;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (poly.coefficient(k).is_zero()) continue;
    if (k == 0) {
      p.add(poly.coefficient(0));
    } else {
      p.add(poly.coefficient(k), {{cell, static_cast<std::uint32_t>(k)}});
    }
  }
  return p;
}

template <class F>
struct BoundaryConstraint {
  std::uint32_t column = 0;
  std::uint64_t row = 0;
  F value{};
};

template <class F>
struct TransitionConstraint {
  std::string name;
  WindowPredicate<F> predicate;

  std::uint32_t window() const { return predicate.window(); }
};

inline constexpr std::uint32_t kMaxConstraintDegree = 8;

// Constraints over the first `trace_length` rows of a trace. Transitions
// apply to every window that fits inside those rows.
template <class F>
struct ConstraintSystem {
  std::size_t num_columns = 1;
  std::size_t trace_length = 0;
  std::vector<BoundaryConstraint<F>> boundaries;
  std::vector<TransitionConstraint<F>> transitions;
  // Public digest of a hidden input, bound into the transcript first.
  std::optional<Digest> statement;

  void validate() const {
    if (num_columns == 0) throw UsageError("constraint system needs at least one column");
    if (trace_length < 2) throw UsageError("trace needs at least two rows");
    if (boundaries.empty() && transitions.empty()) throw UsageError("constraint system is empty");
    std::set<std::pair<std::uint32_t, std::uint64_t>> seen;
    for (const auto& b : boundaries) {
      if (b.column >= num_columns) throw UsageError("boundary constraint references a missing column");
      if (b.row >= trace_length) throw UsageError("boundary constraint row outside the trace");
      if (!seen.insert({b.column, b.row}).second) throw UsageError("duplicate boundary constraint");
    }
    for (const auto& t : transitions) {
      if (t.predicate.terms().empty()) throw UsageError("transition constraint has no terms");
      if (t.predicate.max_column() >= num_columns) throw UsageError("transition references a missing column");
      if (t.predicate.degree() > kMaxConstraintDegree) throw UsageError("transition degree exceeds 8");
      if (t.window() > trace_length) throw UsageError("transition window longer than the trace");
    }
  }

  // Rows on which transition `t` must hold: 0 .. trace_length - window.
  std::size_t transition_rows(const TransitionConstraint<F>& t) const { return trace_length - t.window() + 1; }

  std::vector<std::uint32_t> boundary_columns() const {
    std::set<std::uint32_t> cols;
    for (const auto& b : boundaries) cols.insert(b.column);
    return {cols.begin(), cols.end()};
  }

  std::vector<BoundaryConstraint<F>> boundaries_for(std::uint32_t column) const {
    std::vector<BoundaryConstraint<F>> out;
    for (const auto& b : boundaries)
      if (b.column == column) out.push_back(b);
    return out;
  }

  Digest digest() const {
    ByteWriter w;
    w.u64(F::kModulus);
    w.u64(num_columns);
    w.u64(trace_length);
    w.u32(static_cast<std::uint32_t>(boundaries.size()));
    for (const auto& b : boundaries) {
      w.u32(b.column);
      w.u64(b.row);
      b.value.write(w);
    }
    w.u32(static_cast<std::uint32_t>(transitions.size()));
    for (const auto& t : transitions) t.predicate.write(w);
    return sha256(w.bytes());
  }
};

}  // namespace vck::stark
