#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vck/domain.hpp"
#include "vck/error.hpp"
#include "vck/polynomial.hpp"
#include "vck/stark/constraints.hpp"
#include "vck/stark/trace.hpp"

namespace vck::stark {

template <class F>
struct QuotientResult {
  Polynomial<F> quotient;
  bool exact = true;
};

// I_B: the polynomial through (g^row, value) for each boundary constraint.
template <class F>
Polynomial<F> boundary_interpolant(std::span<const BoundaryConstraint<F>> bcs, const EvaluationDomain<F>& domain) {
  std::vector<std::pair<F, F>> pts;
  for (const auto& b : bcs) pts.emplace_back(domain.element(b.row), b.value);
  return interpolate<F>(pts);
}

template <class F>
Polynomial<F> boundary_zerofier(std::span<const BoundaryConstraint<F>> bcs, const EvaluationDomain<F>& domain) {
  std::vector<F> roots;
  for (const auto& b : bcs) roots.push_back(domain.element(b.row));
  return polynomial_from_roots<F>(roots);
}

// (column - I_B) / Z_B. An empty constraint list leaves the column as is.
template <class F>
QuotientResult<F> boundary_quotient(const Polynomial<F>& column, std::span<const BoundaryConstraint<F>> bcs,
                                    const EvaluationDomain<F>& domain) {
  if (bcs.empty()) return {column, true};
  auto res = divide(column - boundary_interpolant(bcs, domain), boundary_zerofier(bcs, domain));
  return {std::move(res.quotient), res.exact()};
}

// C(x) = predicate(col(x), col(g x), col(g^2 x), ...) built on coefficients.
template <class F>
Polynomial<F> transition_polynomial(std::span<const Polynomial<F>> columns, const TransitionConstraint<F>& tc,
                                    const EvaluationDomain<F>& domain) {
  std::map<Cell, Polynomial<F>> shifted;
  auto lookup = [&](const Cell& cell) -> const Polynomial<F>& {
    auto it = shifted.find(cell);
    if (it == shifted.end()) {
      it = shifted.emplace(cell, columns[cell.column].scale_argument(domain.generator().pow(cell.offset))).first;
    }
    return it->second;
  };
  return tc.predicate.template evaluate<Polynomial<F>>(lookup, Polynomial<F>::constant(F::one()));
}

// Roots g^i of the rows where a transition is not enforced.
template <class F>
std::vector<F> excluded_points(const EvaluationDomain<F>& domain, std::size_t active_rows) {
  std::vector<F> out;
  F cur = domain.generator().pow(active_rows);
  for (std::size_t i = active_rows; i < domain.size(); ++i) {
    out.push_back(cur);
    cur *= domain.generator();
  }
  return out;
}

// C / Z_E with Z_E = (x^n - 1) / prod_{excluded}(x - g^i), computed as
// C * prod_{excluded}(x - g^i) / (x^n - 1).
template <class F>
QuotientResult<F> transition_quotient(std::span<const Polynomial<F>> columns, const TransitionConstraint<F>& tc,
                                      const EvaluationDomain<F>& domain, std::size_t active_rows) {
  auto c = transition_polynomial(columns, tc, domain);
  auto excluded = excluded_points(domain, active_rows);
  auto numerator = c * polynomial_from_roots<F>(excluded);
  auto res = divide(numerator, vanishing_poly(domain));
  return {std::move(res.quotient), res.exact()};
}

// Z_E(x) evaluated from whichever product is shorter.
template <class F>
F transition_zerofier_eval(const EvaluationDomain<F>& domain, std::size_t active_rows, F x) {
  const std::size_t excluded = domain.size() - active_rows;
  if (excluded <= active_rows) {
    F denom = F::one();
    F cur = domain.generator().pow(active_rows);
    for (std::size_t i = 0; i < excluded; ++i) {
      denom *= x - cur;
      cur *= domain.generator();
    }
    return vanishing_eval(domain, x) / denom;
  }
  F acc = F::one();
  F cur = F::one();
  for (std::size_t i = 0; i < active_rows; ++i) {
    acc *= x - cur;
    cur *= domain.generator();
  }
  return acc;
}

// Degree bounds of the honest quotients over a trace of n rows.
inline std::size_t boundary_quotient_bound(std::size_t n, std::size_t num_boundaries) {
  return n - 1 > num_boundaries ? n - 1 - num_boundaries : 0;
}

inline std::size_t transition_quotient_bound(std::size_t n, std::size_t degree, std::size_t excluded) {
  const std::size_t top = degree * (n - 1) + excluded;
  return top > n ? top - n : 0;
}

struct Violation {
  std::string constraint;
  std::size_t row = 0;
};

// Evaluation scan over the trace rows.
template <class F>
std::optional<Violation> first_violation(const TraceTable<F>& trace, const ConstraintSystem<F>& cs) {
  for (std::size_t i = 0; i < cs.boundaries.size(); ++i) {
    const auto& b = cs.boundaries[i];
    if (trace.at(b.row, b.column) != b.value) {
      return Violation{"boundary #" + std::to_string(i) + " (column " + std::to_string(b.column) + ")", b.row};
    }
  }
  for (std::size_t t = 0; t < cs.transitions.size(); ++t) {
    const auto& tc = cs.transitions[t];
    for (std::size_t row = 0; row < cs.transition_rows(tc); ++row) {
      auto v = tc.predicate.template evaluate<F>(
          [&](const Cell& c) { return trace.at(row + c.offset, c.column); }, F::one());
      if (!v.is_zero()) {
        std::string name = tc.name.empty() ? "transition #" + std::to_string(t) : "transition '" + tc.name + "'";
        return Violation{name, row};
      }
    }
  }
  return std::nullopt;
}

}  // namespace vck::stark
