#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "vck/domain.hpp"
#include "vck/error.hpp"
#include "vck/polynomial.hpp"
#include "vck/stark/constraints.hpp"
#include "vck/transcript.hpp"

namespace vck::stark {

template <class F>
class TraceTable {
 public:
  TraceTable() = default;
  explicit TraceTable(std::vector<std::vector<F>> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw UsageError("trace needs at least one column");
    for (const auto& c : columns_)
      if (c.size() != columns_.front().size()) throw UsageError("trace columns differ in length");
  }

  std::size_t num_columns() const { return columns_.size(); }
  std::size_t num_rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
  const std::vector<F>& column(std::size_t c) const { return columns_.at(c); }
  std::vector<F>& column(std::size_t c) { return columns_.at(c); }
  const std::vector<std::vector<F>>& columns() const { return columns_; }
  F at(std::size_t row, std::size_t col) const { return columns_.at(col).at(row); }
  F& at(std::size_t row, std::size_t col) { return columns_.at(col).at(row); }

  void append_row(std::span<const F> row) {
    if (row.size() != columns_.size()) throw UsageError("row width does not match the trace");
    for (std::size_t c = 0; c < row.size(); ++c) columns_[c].push_back(row[c]);
  }

  friend bool operator==(const TraceTable&, const TraceTable&) = default;

 private:
  std::vector<std::vector<F>> columns_;
};

// 1, 1, 2, 3, 5, ... (n rows).
template <class F>
TraceTable<F> trace_fibonacci(std::size_t n) {
  if (n < 2) throw UsageError("Fibonacci trace needs at least two rows");
  std::vector<F> col{F::one(), F::one()};
  while (col.size() < n) col.push_back(col[col.size() - 1] + col[col.size() - 2]);
  return TraceTable<F>({std::move(col)});
}

// s, s^2, s^4, ... (n rows).
template <class F>
TraceTable<F> trace_squares(F seed, std::size_t n) {
  if (n < 2) throw UsageError("squares trace needs at least two rows");
  std::vector<F> col{seed};
  while (col.size() < n) col.push_back(col.back() * col.back());
  return TraceTable<F>({std::move(col)});
}

// Repeats the last row up to `length` rows.
template <class F>
TraceTable<F> pad_trace(TraceTable<F> trace, std::size_t length) {
  std::vector<F> last;
  for (std::size_t c = 0; c < trace.num_columns(); ++c) last.push_back(trace.column(c).back());
  while (trace.num_rows() < length) trace.append_row(last);
  return trace;
}

// Appends `noise_rows` uniformly random rows, then random rows up to
// `length`. The constraints never cover these rows.
template <class F>
TraceTable<F> zk_pad(TraceTable<F> trace, std::size_t noise_rows, std::size_t length, std::uint64_t seed) {
  Transcript stream("stark/zk-pad");
  stream.absorb_u64("seed", seed);
  const std::size_t target = std::max(length, trace.num_rows() + noise_rows);
  std::vector<F> row(trace.num_columns());
  while (trace.num_rows() < target) {
    for (F& v : row) v = stream.challenge_field<F>();
    trace.append_row(row);
  }
  return trace;
}

template <class F>
std::vector<Polynomial<F>> interpolate_trace(const TraceTable<F>& trace, const EvaluationDomain<F>& domain) {
  if (trace.num_rows() != domain.size()) throw UsageError("trace length does not match the trace domain");
  std::vector<Polynomial<F>> polys;
  for (const auto& col : trace.columns()) polys.push_back(interpolate_domain<F>(col, domain));
  return polys;
}

// Column-major evaluations of each polynomial over the LDE domain.
template <class F>
std::vector<std::vector<F>> low_degree_extend(std::span<const Polynomial<F>> polys, const EvaluationDomain<F>& lde) {
  std::vector<std::vector<F>> out;
  for (const auto& p : polys) out.push_back(evaluate_domain(p, lde));
  return out;
}

template <class F>
struct Program {
  ConstraintSystem<F> cs;
  TraceTable<F> trace;
};

// Column 0 follows x[i+2] = x[i+1] + x[i] from (1, 1); the last row is the
// public output.
template <class F>
Program<F> fibonacci_program(std::size_t n) {
  Program<F> p;
  p.trace = trace_fibonacci<F>(n);
  p.cs.num_columns = 1;
  p.cs.trace_length = n;
  p.cs.boundaries = {{0, 0, F::one()}, {0, 1, F::one()}, {0, n - 1, p.trace.at(n - 1, 0)}};
  WindowPredicate<F> pred;
  pred.add(F::one(), {{Cell{2, 0}, 1}}).add(-F::one(), {{Cell{1, 0}, 1}}).add(-F::one(), {{Cell{0, 0}, 1}});
  p.cs.transitions.push_back({"fibonacci", std::move(pred)});
  return p;
}

// Column 0 follows x[i+1] = x[i]^2.
template <class F>
Program<F> squares_program(F seed, std::size_t n) {
  Program<F> p;
  p.trace = trace_squares<F>(seed, n);
  p.cs.num_columns = 1;
  p.cs.trace_length = n;
  p.cs.boundaries = {{0, 0, seed}, {0, n - 1, p.trace.at(n - 1, 0)}};
  WindowPredicate<F> pred;
  pred.add(F::one(), {{Cell{1, 0}, 1}}).add(-F::one(), {{Cell{0, 0}, 2}});
  p.cs.transitions.push_back({"squares", std::move(pred)});
  return p;
}

}  // namespace vck::stark
