#pragma once

#include <cstddef>
#include <span>

#include "vck/error.hpp"
#include "vck/transcript.hpp"

namespace vck::stark {

// Probabilistic equality of two polynomials given by their evaluations over
// one domain: k transcript-drawn indices (with replacement), accept iff the
// values agree at every one. Unequal polynomials of degree <= d agree on at
// most d points, so each query errs with probability <= d / |D|.
template <class F>
bool probabilistic_poly_eq(std::span<const F> f_evals, std::span<const F> g_evals, std::size_t degree_bound,
                           Transcript& t, std::size_t k) {
  if (f_evals.size() != g_evals.size()) throw UsageError("evaluation vectors differ in length");
  if (f_evals.size() <= degree_bound) throw UsageError("domain must be larger than the degree bound");
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t idx = t.challenge_index(f_evals.size());
    if (f_evals[idx] != g_evals[idx]) return false;
  }
  return true;
}

}  // namespace vck::stark
