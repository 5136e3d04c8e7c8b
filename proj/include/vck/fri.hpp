#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vck/bytes.hpp"
#include "vck/domain.hpp"
#include "vck/error.hpp"
#include "vck/hash.hpp"
#include "vck/merkle.hpp"
#include "vck/polynomial.hpp"
#include "vck/transcript.hpp"

namespace vck::fri {

template <class F>
struct FriParams {
  EvaluationDomain<F> domain;
  std::size_t degree_bound;
  std::size_t num_queries;

  FriParams(EvaluationDomain<F> d, std::size_t bound, std::size_t queries)
      : domain(std::move(d)), degree_bound(bound), num_queries(queries) {
    if (!domain.is_structured()) throw UsageError("FRI needs a subgroup or coset domain");
    if (domain.size() < 2) throw UsageError("FRI domain needs at least two points");
    if (!std::has_single_bit(degree_bound)) throw UsageError("FRI degree bound must be a power of two");
    if (degree_bound > domain.size()) throw UsageError("FRI degree bound exceeds the domain size");
    if (num_queries == 0) throw UsageError("FRI needs at least one query");
  }

  // log2 d folding rounds, each committing one layer.
  std::size_t rounds() const { return static_cast<std::size_t>(std::countr_zero(degree_bound)); }
  // Layers carrying Merkle commitments; a degree bound of 1 still commits
  // the input so the constant check can be queried.
  std::size_t committed_layers() const { return std::max<std::size_t>(rounds(), 1); }
  // Queries are drawn without replacement from the first layer's pairs.
  std::size_t effective_queries() const { return std::min(num_queries, domain.size() / 2); }
  std::size_t blowup() const { return domain.size() / degree_bound; }
};

// Two-point interpolation through (alpha, a) and (-alpha, b), evaluated at x0:
// (a + b) / 2 + x0 (a - b) / (2 alpha).
template <class F>
F fold_pair(F a, F b, F x0, F alpha_inv) {
  static const F inv2 = F(2).inverse();
  return ((a + b) + x0 * (a - b) * alpha_inv) * inv2;
}

// Folds evaluations over D (natural order, partner of i at i + n/2) into
// evaluations over D^2.
template <class F>
std::vector<F> fold_layer(std::span<const F> evals, const EvaluationDomain<F>& domain, F x0) {
  if (evals.size() != domain.size() || evals.size() < 2) throw UsageError("fold: layer size mismatch");
  const std::size_t half = evals.size() / 2;
  std::vector<F> out(half);
  F alpha_inv = domain.offset().inverse();
  const F g_inv = domain.generator().inverse();
  for (std::size_t j = 0; j < half; ++j) {
    out[j] = fold_pair(evals[j], evals[j + half], x0, alpha_inv);
    alpha_inv *= g_inv;
  }
  return out;
}

template <class F>
Bytes pair_leaf(F a, F b) {
  ByteWriter w;
  a.write(w);
  b.write(w);
  return std::move(w).bytes();
}

template <class F>
MerkleTree commit_layer(std::span<const F> evals) {
  const std::size_t half = evals.size() / 2;
  std::vector<Bytes> leaves;
  leaves.reserve(half);
  for (std::size_t j = 0; j < half; ++j) leaves.push_back(pair_leaf(evals[j], evals[j + half]));
  return MerkleTree::build(leaves);
}

// Test and experiment hooks; an honest prover leaves them at the defaults.
struct ProverOptions {
  // Claim the most frequent final-layer value instead of refusing a
  // non-constant final layer.
  bool lenient_final = false;
  // Overwrite one committed entry (layer, element index) after folding.
  std::optional<std::pair<std::size_t, std::size_t>> corrupt;
};

template <class F>
struct Commitment {
  std::vector<std::vector<F>> layers;  // committed values, as opened
  std::vector<MerkleTree> trees;
  std::vector<F> challenges;
  std::vector<F> final_layer;
  F final_value{};

  std::vector<Digest> roots() const {
    std::vector<Digest> out;
    for (const auto& t : trees) out.push_back(t.root());
    return out;
  }
};

template <class F>
struct QueryBundle {
  std::uint32_t position = 0;  // pair index in layer 0
  std::vector<F> firsts;
  std::vector<F> seconds;
  std::vector<AuthPath> paths;

  friend bool operator==(const QueryBundle&, const QueryBundle&) = default;
};

template <class F>
struct FriProof {
  std::vector<Digest> layer_roots;
  F final_value{};
  std::vector<QueryBundle<F>> queries;

  friend bool operator==(const FriProof&, const FriProof&) = default;

  // hash id || rounds || roots || final value || query bundles.
  void write(ByteWriter& w) const {
    w.u8(static_cast<std::uint8_t>(kHashAlgorithm));
    w.u8(static_cast<std::uint8_t>(layer_roots.size()));
    for (const Digest& d : layer_roots) write_digest(w, d);
    final_value.write(w);
    w.u32(static_cast<std::uint32_t>(queries.size()));
    for (const auto& q : queries) {
      w.u32(q.position);
      for (std::size_t i = 0; i < layer_roots.size(); ++i) {
        q.firsts[i].write(w);
        q.seconds[i].write(w);
        q.paths[i].write(w);
      }
    }
  }

  static FriProof read(ByteReader& r) {
    if (r.u8() != static_cast<std::uint8_t>(kHashAlgorithm)) throw ParseError("unsupported hash algorithm");
    FriProof p;
    const std::size_t layers = r.u8();
    for (std::size_t i = 0; i < layers; ++i) p.layer_roots.push_back(read_digest(r));
    p.final_value = F::read(r);
    const std::uint32_t count = r.u32();
    if (count > r.remaining()) throw ParseError("query count exceeds input");
    for (std::uint32_t k = 0; k < count; ++k) {
      QueryBundle<F> q;
      q.position = r.u32();
      for (std::size_t i = 0; i < layers; ++i) {
        q.firsts.push_back(F::read(r));
        q.seconds.push_back(F::read(r));
        q.paths.push_back(AuthPath::read(r));
      }
      p.queries.push_back(std::move(q));
    }
    return p;
  }

  Bytes serialize() const {
    ByteWriter w;
    write(w);
    return std::move(w).bytes();
  }
  static FriProof deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    FriProof p = read(r);
    r.expect_done();
    return p;
  }
};

template <class F>
void absorb_params(Transcript& t, const FriParams<F>& params) {
  ByteWriter w;
  w.u64(params.domain.size());
  params.domain.offset().write(w);
  w.u64(params.degree_bound);
  w.u64(params.num_queries);
  t.absorb("fri/params", w.bytes());
}

// Commit phase: commit each layer, absorb its root, draw x_i, fold.
template <class F>
Commitment<F> commit_phase(std::span<const F> evals, const FriParams<F>& params, Transcript& t,
                           const ProverOptions& opts = {}) {
  if (evals.size() != params.domain.size()) throw UsageError("FRI input size does not match the domain");
  absorb_params(t, params);
  Commitment<F> c;
  std::vector<F> current(evals.begin(), evals.end());
  EvaluationDomain<F> domain = params.domain;
  for (std::size_t i = 0; i < params.committed_layers(); ++i) {
    std::vector<F> committed = current;
    if (opts.corrupt && opts.corrupt->first == i) {
      if (opts.corrupt->second >= committed.size()) throw UsageError("corruption index out of range");
      committed[opts.corrupt->second] += F::one();
    }
    c.trees.push_back(commit_layer<F>(committed));
    c.layers.push_back(std::move(committed));
    t.absorb("fri/root", c.trees.back().root());
    if (i < params.rounds()) {
      F x = t.challenge_field<F>();
      c.challenges.push_back(x);
      current = fold_layer<F>(current, domain, x);
      domain = domain.squared();
    }
  }
  c.final_layer = current;
  if (opts.lenient_final) {
    std::map<F, std::size_t> counts;
    for (const F& v : current) ++counts[v];
    std::size_t best = 0;
    for (const F& v : current) {
      if (counts[v] > best) {
        best = counts[v];
        c.final_value = v;
      }
    }
  } else {
    if (!std::all_of(current.begin(), current.end(), [&](const F& v) { return v == current.front(); })) {
      throw ConstraintViolation("FRI final layer is not constant: input exceeds the degree bound");
    }
    c.final_value = current.front();
  }
  t.absorb_field("fri/final", c.final_value);
  return c;
}

// Distinct pair indices in layer 0.
template <class F>
std::vector<std::size_t> draw_queries(Transcript& t, const FriParams<F>& params) {
  const std::size_t half = params.domain.size() / 2;
  std::vector<std::size_t> out;
  std::set<std::size_t> seen;
  while (out.size() < params.effective_queries()) {
    std::size_t p = t.challenge_index(half);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

template <class F>
FriProof<F> query_phase(const Commitment<F>& c, const FriParams<F>& params, Transcript& t) {
  FriProof<F> proof;
  proof.layer_roots = c.roots();
  proof.final_value = c.final_value;
  for (std::size_t p : draw_queries(t, params)) {
    QueryBundle<F> q;
    q.position = static_cast<std::uint32_t>(p);
    std::size_t pos = p;
    for (std::size_t i = 0; i < c.layers.size(); ++i) {
      const std::size_t half = c.layers[i].size() / 2;
      const std::size_t pair = pos % half;
      q.firsts.push_back(c.layers[i][pair]);
      q.seconds.push_back(c.layers[i][pair + half]);
      q.paths.push_back(c.trees[i].open(pair));
      pos = pair;
    }
    proof.queries.push_back(std::move(q));
  }
  return proof;
}

template <class F>
FriProof<F> prove(std::span<const F> evals, const FriParams<F>& params, Transcript& t,
                  const ProverOptions& opts = {}) {
  auto c = commit_phase(evals, params, t, opts);
  return query_phase(c, params, t);
}

struct Verdict {
  bool accepted = false;
  std::optional<std::size_t> failing_layer;
  std::string reason;
  bool transcript_mismatch = false;

  explicit operator bool() const { return accepted; }

  static Verdict accept() { return {true, std::nullopt, "accepted"}; }
  static Verdict reject(std::string why, std::optional<std::size_t> layer = std::nullopt) {
    return {false, layer, std::move(why)};
  }
  static Verdict mismatch(std::string why) { return {false, std::nullopt, std::move(why), true}; }
};

// Replays the transcript, then checks every query chain: Merkle paths per
// layer, fold consistency into the next layer, and the final constant.
template <class F>
Verdict verify(const FriProof<F>& proof, const FriParams<F>& params, Transcript& t) {
  const std::size_t layers = params.committed_layers();
  if (proof.layer_roots.size() != layers) return Verdict::reject("wrong number of layer roots");
  absorb_params(t, params);
  std::vector<F> xs;
  for (std::size_t i = 0; i < layers; ++i) {
    t.absorb("fri/root", proof.layer_roots[i]);
    if (i < params.rounds()) xs.push_back(t.challenge_field<F>());
  }
  t.absorb_field("fri/final", proof.final_value);
  const auto positions = draw_queries(t, params);
  if (proof.queries.size() != positions.size()) return Verdict::reject("wrong number of queries");

  const std::size_t n = params.domain.size();
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const auto& q = proof.queries[k];
    if (q.position != positions[k]) return Verdict::mismatch("query position does not match the transcript");
    if (q.firsts.size() != layers || q.seconds.size() != layers || q.paths.size() != layers) {
      return Verdict::reject("malformed query bundle");
    }
    std::size_t pos = positions[k];
    std::size_t size = n;
    // x is the first element of the current pair; squaring (and a sign flip
    // when the pair index wraps) carries it to the next layer.
    F x = params.domain.element(pos);
    std::optional<F> expected;
    for (std::size_t i = 0; i < layers; ++i) {
      const std::size_t half = size / 2;
      const std::size_t pair = pos % half;
      if (!verify_path(proof.layer_roots[i], pair, pair_leaf(q.firsts[i], q.seconds[i]), q.paths[i])) {
        return Verdict::reject("Merkle path check failed", i);
      }
      if (expected && *expected != (pos >= half ? q.seconds[i] : q.firsts[i])) {
        return Verdict::reject("fold consistency check failed", i);
      }
      if (i < params.rounds()) {
        expected = fold_pair(q.firsts[i], q.seconds[i], xs[i], x.inverse());
        x *= x;
        if (pair >= half / 2) x = -x;
      } else if (q.firsts[i] != proof.final_value || q.seconds[i] != proof.final_value) {
        return Verdict::reject("final layer is not the claimed constant", i);
      }
      pos = pair;
      size = half;
    }
    if (expected && *expected != proof.final_value) {
      return Verdict::reject("final layer is not the claimed constant", layers);
    }
  }
  return Verdict::accept();
}

}  // namespace vck::fri
