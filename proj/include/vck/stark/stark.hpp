#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vck/bytes.hpp"
#include "vck/domain.hpp"
#include "vck/error.hpp"
#include "vck/fri.hpp"
#include "vck/hash.hpp"
#include "vck/merkle.hpp"
#include "vck/stark/constraints.hpp"
#include "vck/stark/quotient.hpp"
#include "vck/stark/trace.hpp"
#include "vck/transcript.hpp"

namespace vck::stark {

struct StarkParams {
  std::size_t blowup = 8;
  std::size_t num_queries = 20;
  bool zk = false;
  std::uint64_t zk_seed = 0;  // prover-side only; never serialized

  void validate() const {
    if (blowup < 4 || !std::has_single_bit(blowup)) throw UsageError("blowup must be a power of two >= 4");
    if (num_queries == 0) throw UsageError("need at least one query");
  }

  void write(ByteWriter& w) const {
    w.u32(static_cast<std::uint32_t>(blowup));
    w.u32(static_cast<std::uint32_t>(num_queries));
    w.u8(zk ? 1 : 0);
  }
  static StarkParams read(ByteReader& r) {
    StarkParams p;
    p.blowup = r.u32();
    p.num_queries = r.u32();
    p.zk = r.u8() != 0;
    return p;
  }
};

// Rows of the committed trace: the constrained rows, plus one noise row
// per query under zk, rounded up to a power of two.
inline std::size_t padded_length(std::size_t trace_length, const StarkParams& params) {
  const std::size_t rows = trace_length + (params.zk ? params.num_queries : 0);
  return std::bit_ceil(std::max<std::size_t>(rows, 2));
}

// Fixed LDE coset offset. The multiplicative generator has order p - 1, so
// h^|D'| != 1 and the coset misses every subgroup of size |D'|.
template <class F>
EvaluationDomain<F> lde_domain(std::size_t n, const StarkParams& params) {
  const std::size_t size = n * params.blowup;
  if (std::countr_zero(size) > static_cast<int>(F::kTwoAdicity)) throw UsageError("LDE domain exceeds the field's 2-adicity");
  const F h = F::generator();
  if (h.pow(size) == F::one()) throw UsageError("field too small for a disjoint coset of this size");
  return EvaluationDomain<F>::coset(size, h);
}

// The quotient list: one boundary quotient per constrained column (ascending
// column order), then one per transition.
template <class F>
std::vector<std::size_t> quotient_degree_bounds(const ConstraintSystem<F>& cs, std::size_t n) {
  std::vector<std::size_t> bounds;
  for (std::uint32_t c : cs.boundary_columns()) bounds.push_back(boundary_quotient_bound(n, cs.boundaries_for(c).size()));
  for (const auto& t : cs.transitions) {
    bounds.push_back(transition_quotient_bound(n, t.predicate.degree(), n - cs.transition_rows(t)));
  }
  return bounds;
}

// Power of two strictly above every quotient degree (at least 2).
template <class F>
std::size_t composition_degree_bound(const ConstraintSystem<F>& cs, std::size_t n) {
  std::size_t top = 0;
  for (std::size_t b : quotient_degree_bounds(cs, n)) top = std::max(top, b);
  return std::bit_ceil(std::max<std::size_t>(top + 1, 2));
}

template <class F>
struct TraceOpening {
  std::vector<std::vector<F>> rows;  // row k + j * blowup for j < window
  std::vector<AuthPath> paths;

  friend bool operator==(const TraceOpening&, const TraceOpening&) = default;
};

template <class F>
struct StarkProof {
  std::uint64_t trace_rows = 0;  // padded length n
  Digest trace_root{};
  fri::FriProof<F> fri;
  std::vector<TraceOpening<F>> openings;

  // The composition LDE is FRI's first committed layer.
  const Digest& composition_root() const { return fri.layer_roots.front(); }

  friend bool operator==(const StarkProof&, const StarkProof&) = default;

  void write(ByteWriter& w) const {
    w.u8(static_cast<std::uint8_t>(kHashAlgorithm));
    w.u64(trace_rows);
    write_digest(w, trace_root);
    fri.write(w);
    w.u32(static_cast<std::uint32_t>(openings.size()));
    for (const auto& o : openings) {
      w.u8(static_cast<std::uint8_t>(o.rows.size()));
      for (std::size_t j = 0; j < o.rows.size(); ++j) {
        w.u32(static_cast<std::uint32_t>(o.rows[j].size()));
        for (const F& v : o.rows[j]) v.write(w);
        o.paths[j].write(w);
      }
    }
  }

  static StarkProof read(ByteReader& r) {
    if (r.u8() != static_cast<std::uint8_t>(kHashAlgorithm)) throw ParseError("unsupported hash algorithm");
    StarkProof p;
    p.trace_rows = r.u64();
    p.trace_root = read_digest(r);
    p.fri = fri::FriProof<F>::read(r);
    const std::uint32_t count = r.u32();
    if (count > r.remaining()) throw ParseError("opening count exceeds input");
    for (std::uint32_t k = 0; k < count; ++k) {
      TraceOpening<F> o;
      const std::size_t window = r.u8();
      for (std::size_t j = 0; j < window; ++j) {
        const std::uint32_t width = r.u32();
        if (width > r.remaining()) throw ParseError("row width exceeds input");
        std::vector<F> row;
        for (std::uint32_t c = 0; c < width; ++c) row.push_back(F::read(r));
        o.rows.push_back(std::move(row));
        o.paths.push_back(AuthPath::read(r));
      }
      p.openings.push_back(std::move(o));
    }
    return p;
  }

  Bytes serialize() const {
    ByteWriter w;
    write(w);
    return std::move(w).bytes();
  }
  static StarkProof deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    StarkProof p = read(r);
    r.expect_done();
    return p;
  }
};

struct ProverOptions {
  // Cheating-prover harness: build quotients by floor division even when
  // the trace breaks a constraint. Soundness experiments only.
  bool skip_constraint_check = false;
  // Receives the transcript's absorbed labels, in order.
  std::vector<std::string>* transcript_labels = nullptr;
};

// SHA-256 of the hidden input; bound into the transcript as public input.
inline Digest zk_statement_digest(std::span<const std::uint8_t> secret_input) { return sha256(secret_input); }

namespace detail {

template <class F>
std::size_t max_window(const ConstraintSystem<F>& cs) {
  std::size_t w = 1;
  for (const auto& t : cs.transitions) w = std::max<std::size_t>(w, t.window());
  return w;
}

template <class F>
Bytes row_leaf(std::span<const std::vector<F>> lde, std::size_t k) {
  ByteWriter w;
  for (const auto& col : lde) col[k].write(w);
  return std::move(w).bytes();
}

template <class F>
Bytes row_bytes(std::span<const F> row) {
  ByteWriter w;
  for (const F& v : row) v.write(w);
  return std::move(w).bytes();
}

// Transcript prefix shared by prover and verifier, up to the trace root.
template <class F>
Transcript open_transcript(const ConstraintSystem<F>& cs, const StarkParams& params, std::size_t n,
                           const Digest& trace_root) {
  Transcript t("stark");
  ByteWriter w;
  w.u64(F::kModulus);
  w.u64(n);
  params.write(w);
  t.absorb("params", w.bytes());
  t.absorb("cs", cs.digest());
  if (cs.statement) t.absorb("statement", *cs.statement);
  t.absorb("trace-root", trace_root);
  return t;
}

template <class F>
std::vector<F> draw_gammas(Transcript& t, std::size_t count) {
  std::vector<F> g;
  for (std::size_t i = 0; i < count; ++i) g.push_back(t.challenge_field<F>());
  return g;
}

}  // namespace detail

// Sum of gamma_i * q_i.
template <class F>
Polynomial<F> compose(std::span<const Polynomial<F>> quotients, std::span<const F> gammas) {
  if (quotients.empty()) throw UsageError("composition needs at least one quotient");
  if (quotients.size() != gammas.size()) throw UsageError("one challenge per quotient");
  Polynomial<F> acc;
  for (std::size_t i = 0; i < quotients.size(); ++i) acc += quotients[i] * gammas[i];
  return acc;
}

template <class F>
std::vector<Polynomial<F>> build_quotients(std::span<const Polynomial<F>> columns, const ConstraintSystem<F>& cs,
                                           const EvaluationDomain<F>& domain, bool require_exact) {
  std::vector<Polynomial<F>> out;
  for (std::uint32_t c : cs.boundary_columns()) {
    auto bcs = cs.boundaries_for(c);
    auto q = boundary_quotient<F>(columns[c], bcs, domain);
    if (require_exact && !q.exact) {
      throw ConstraintViolation("boundary constraint on column " + std::to_string(c) + " does not divide exactly");
    }
    out.push_back(std::move(q.quotient));
  }
  for (const auto& t : cs.transitions) {
    auto q = transition_quotient<F>(columns, t, domain, cs.transition_rows(t));
    if (require_exact && !q.exact) {
      throw ConstraintViolation("transition '" + t.name + "' does not divide exactly");
    }
    out.push_back(std::move(q.quotient));
  }
  return out;
}

template <class F>
StarkProof<F> prove(const TraceTable<F>& trace, const ConstraintSystem<F>& cs, const StarkParams& params,
                    const ProverOptions& opts = {}) {
  cs.validate();
  params.validate();
  if (trace.num_rows() != cs.trace_length) throw UsageError("trace length does not match the constraint system");
  if (trace.num_columns() != cs.num_columns) throw UsageError("trace width does not match the constraint system");
  if (!opts.skip_constraint_check) {
    if (auto v = first_violation(trace, cs)) {
      throw ConstraintViolation(v->constraint + " violated at row " + std::to_string(v->row));
    }
  }

  const std::size_t n = padded_length(cs.trace_length, params);
  const auto padded = params.zk ? zk_pad(trace, params.num_queries, n, params.zk_seed) : pad_trace(trace, n);
  const auto trace_domain = EvaluationDomain<F>::subgroup(n);
  const auto lde = lde_domain<F>(n, params);
  const std::size_t degree_bound = composition_degree_bound(cs, n);
  if (2 * degree_bound > lde.size()) throw UsageError("blowup too small for the constraint degree");

  const auto columns = interpolate_trace(padded, trace_domain);
  const auto lde_values = low_degree_extend<F>(columns, lde);
  std::vector<Bytes> leaves;
  leaves.reserve(lde.size());
  for (std::size_t k = 0; k < lde.size(); ++k) leaves.push_back(detail::row_leaf<F>(lde_values, k));
  const auto tree = MerkleTree::build(leaves);

  StarkProof<F> proof;
  proof.trace_rows = n;
  proof.trace_root = tree.root();
  Transcript t = detail::open_transcript(cs, params, n, proof.trace_root);

  const auto quotients = build_quotients<F>(columns, cs, trace_domain, !opts.skip_constraint_check);
  const auto gammas = detail::draw_gammas<F>(t, quotients.size());
  const auto composition = compose<F>(quotients, gammas);

  fri::FriParams<F> fri_params(lde, degree_bound, params.num_queries);
  proof.fri = fri::prove<F>(evaluate_domain(composition, lde), fri_params, t);

  const std::size_t window = detail::max_window(cs);
  for (const auto& q : proof.fri.queries) {
    TraceOpening<F> o;
    for (std::size_t j = 0; j < window; ++j) {
      const std::size_t k = (q.position + j * params.blowup) % lde.size();
      std::vector<F> row;
      for (const auto& col : lde_values) row.push_back(col[k]);
      o.rows.push_back(std::move(row));
      o.paths.push_back(tree.open(k));
    }
    proof.openings.push_back(std::move(o));
  }
  if (opts.transcript_labels) *opts.transcript_labels = t.absorbed_labels();
  return proof;
}

enum class VerifyStatus { kAccepted, kMalformed, kPathFailure, kConstraintFailure, kFriFailure, kTranscriptMismatch };

inline const char* to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kAccepted: return "accepted";
    case VerifyStatus::kMalformed: return "malformed proof";
    case VerifyStatus::kPathFailure: return "Merkle path failure";
    case VerifyStatus::kConstraintFailure: return "constraint equation failure";
    case VerifyStatus::kFriFailure: return "FRI failure";
    case VerifyStatus::kTranscriptMismatch: return "transcript mismatch";
  }
  return "unknown";
}

struct Verdict {
  VerifyStatus status = VerifyStatus::kMalformed;
  std::string reason;
  std::optional<std::size_t> query;

  bool accepted() const { return status == VerifyStatus::kAccepted; }
  explicit operator bool() const { return accepted(); }
};

// Opened LDE indices of a proof (first row of each window).
template <class F>
std::vector<std::size_t> opened_indices(const StarkProof<F>& proof, const StarkParams& params) {
  std::vector<std::size_t> out;
  const std::size_t size = proof.trace_rows * params.blowup;
  for (std::size_t k = 0; k < proof.fri.queries.size() && k < proof.openings.size(); ++k) {
    for (std::size_t j = 0; j < proof.openings[k].rows.size(); ++j) {
      out.push_back((proof.fri.queries[k].position + j * params.blowup) % size);
    }
  }
  return out;
}

template <class F>
Verdict verify(const StarkProof<F>& proof, const ConstraintSystem<F>& cs, const StarkParams& params) {
  auto reject = [](VerifyStatus s, std::string why, std::optional<std::size_t> q = std::nullopt) {
    return Verdict{s, std::move(why), q};
  };
  try {
    cs.validate();
    params.validate();
  } catch (const UsageError& e) {
    return reject(VerifyStatus::kMalformed, e.what());
  }
  const std::size_t n = padded_length(cs.trace_length, params);
  if (proof.trace_rows != n) return reject(VerifyStatus::kMalformed, "trace length does not match the statement");
  const auto trace_domain = EvaluationDomain<F>::subgroup(n);
  const auto lde = lde_domain<F>(n, params);
  const std::size_t degree_bound = composition_degree_bound(cs, n);
  if (2 * degree_bound > lde.size()) return reject(VerifyStatus::kMalformed, "blowup too small for the constraints");
  if (proof.fri.layer_roots.empty()) return reject(VerifyStatus::kMalformed, "missing composition commitment");

  Transcript t = detail::open_transcript(cs, params, n, proof.trace_root);
  const auto boundary_cols = cs.boundary_columns();
  const auto gammas = detail::draw_gammas<F>(t, boundary_cols.size() + cs.transitions.size());

  fri::FriParams<F> fri_params(lde, degree_bound, params.num_queries);
  auto fv = fri::verify(proof.fri, fri_params, t);
  if (!fv) {
    return reject(fv.transcript_mismatch ? VerifyStatus::kTranscriptMismatch : VerifyStatus::kFriFailure,
                  "FRI: " + fv.reason);
  }

  const std::size_t window = detail::max_window(cs);
  if (proof.openings.size() != proof.fri.queries.size()) {
    return reject(VerifyStatus::kMalformed, "opening count does not match the query count");
  }

  // Per-proof precomputation: boundary interpolants and zerofiers.
  std::vector<Polynomial<F>> interpolants, zerofiers;
  for (std::uint32_t c : boundary_cols) {
    auto bcs = cs.boundaries_for(c);
    interpolants.push_back(boundary_interpolant<F>(bcs, trace_domain));
    zerofiers.push_back(boundary_zerofier<F>(bcs, trace_domain));
  }

  for (std::size_t k = 0; k < proof.openings.size(); ++k) {
    const auto& o = proof.openings[k];
    const std::size_t pos = proof.fri.queries[k].position;
    if (o.rows.size() != window || o.paths.size() != window) {
      return reject(VerifyStatus::kMalformed, "opening window has the wrong size", k);
    }
    for (std::size_t j = 0; j < window; ++j) {
      if (o.rows[j].size() != cs.num_columns) return reject(VerifyStatus::kMalformed, "row width mismatch", k);
      const std::size_t idx = (pos + j * params.blowup) % lde.size();
      if (!verify_path(proof.trace_root, idx, detail::row_bytes<F>(o.rows[j]), o.paths[j])) {
        return reject(VerifyStatus::kPathFailure, "trace opening fails its Merkle path", k);
      }
    }

    const F x = lde.element(pos);
    F combined = F::zero();
    std::size_t gi = 0;
    for (std::size_t b = 0; b < boundary_cols.size(); ++b, ++gi) {
      const F v = o.rows[0][boundary_cols[b]];
      combined += gammas[gi] * (v - interpolants[b](x)) / zerofiers[b](x);
    }
    for (const auto& tc : cs.transitions) {
      const F c = tc.predicate.template evaluate<F>([&](const Cell& cell) { return o.rows[cell.offset][cell.column]; },
                                                   F::one());
      combined += gammas[gi++] * c / transition_zerofier_eval(trace_domain, cs.transition_rows(tc), x);
    }
    if (combined != proof.fri.queries[k].firsts[0]) {
      return reject(VerifyStatus::kConstraintFailure, "constraint equation fails at query " + std::to_string(k), k);
    }
  }
  return {VerifyStatus::kAccepted, "accepted", std::nullopt};
}

}  // namespace vck::stark
