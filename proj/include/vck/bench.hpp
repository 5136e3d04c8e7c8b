#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "vck/bigint.hpp"
#include "vck/domain.hpp"
#include "vck/field.hpp"
#include "vck/fri.hpp"
#include "vck/hauth/hauth.hpp"
#include "vck/polynomial.hpp"
#include "vck/stark/stark.hpp"
#include "vck/stark/two_poly.hpp"
#include "vck/vdf.hpp"

// Monte Carlo experiments with pass/fail thresholds. Each returns a
// structured record plus a one-line human summary.
namespace vck::bench {

using Json = nlohmann::json;

struct Report {
  std::string name;
  bool pass = false;
  Json record;
  std::string summary;
  double seconds = 0;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Report finish(std::string name, bool pass, Json record, std::string summary, const Stopwatch& sw) {
  Report r{std::move(name), pass, std::move(record), std::move(summary), sw.seconds()};
  r.record["name"] = r.name;
  r.record["pass"] = r.pass;
  r.record["seconds"] = r.seconds;
  return r;
}

template <class F>
Polynomial<F> random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::vector<F> c(degree + 1);
  for (auto& v : c) v = F::random(rng);
  while (c.back().is_zero()) c.back() = F::random(rng);
  return Polynomial<F>(std::move(c));
}

template <class F>
hauth::Circuit<F> random_circuit(std::mt19937_64& rng, std::size_t max_depth) {
  const std::size_t inputs = 1 + rng() % 4;
  hauth::Circuit<F> c(inputs);
  std::vector<std::size_t> depth(inputs, 0);
  const std::size_t gates = 1 + rng() % 8;
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t a = rng() % depth.size();
    const std::size_t b = rng() % depth.size();
    const std::size_t op = rng() % 4;
    if (op == 1 && std::max(depth[a], depth[b]) + 1 <= max_depth) {
      c.mul(a, b);
      depth.push_back(std::max(depth[a], depth[b]) + 1);
    } else if (op <= 1) {
      c.add(a, b);
      depth.push_back(std::max(depth[a], depth[b]));
    } else if (op == 2) {
      c.add_const(a, F::random(rng));
      depth.push_back(depth[a]);
    } else {
      c.mul_const(a, F::random(rng));
      depth.push_back(depth[a]);
    }
  }
  return c;
}

inline std::string fmt(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Probabilistic polynomial equality against g = f + Z_S, |S| = d.

struct TwoPolyOptions {
  std::size_t degree = 4;
  std::size_t domain = 400;
  std::size_t trials = 100000;
  std::size_t queries = 1;
  std::uint64_t seed = 0;
};

template <class F = DefaultField>
Report two_poly_soundness(const TwoPolyOptions& o) {
  detail::Stopwatch sw;
  if (o.domain <= o.degree || o.domain >= F::kModulus) throw UsageError("domain size must lie in (d, p)");
  if (o.trials == 0 || o.queries == 0) throw UsageError("need at least one trial and one query");
  std::mt19937_64 rng(o.seed);
  std::vector<F> points;
  for (std::uint64_t i = 1; i <= o.domain; ++i) points.push_back(F(i));
  auto domain = EvaluationDomain<F>::explicit_points(points);
  auto f = detail::random_poly<F>(rng, o.degree);
  std::vector<F> shuffled = points;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::vector<F> s(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(o.degree));
  auto g = f + polynomial_from_roots<F>(s);
  auto fe = evaluate_domain(f, domain), ge = evaluate_domain(g, domain);

  std::size_t accepted = 0;
  for (std::size_t i = 0; i < o.trials; ++i) {
    Transcript t("bench/2poly");
    t.absorb_u64("seed", o.seed);
    t.absorb_u64("trial", i);
    accepted += stark::probabilistic_poly_eq<F>(fe, ge, o.degree, t, o.queries);
  }
  const double n = static_cast<double>(o.trials);
  const double rate = static_cast<double>(accepted) / n;
  const double eps = std::pow(static_cast<double>(o.degree) / static_cast<double>(o.domain),
                              static_cast<double>(o.queries));
  const double sigma = std::sqrt(eps * (1 - eps) / n);
  const bool pass = std::abs(rate - eps) <= 3 * sigma + 1e-12;
  Json rec{{"d", o.degree}, {"domain", o.domain}, {"trials", o.trials}, {"queries", o.queries},
           {"accepted", accepted}, {"rate", rate}, {"expected", eps}, {"sigma", sigma}};
  return detail::finish("2poly", pass, rec,
                        "false-accept rate " + detail::fmt(rate) + " vs expected " + detail::fmt(eps) +
                            " (3 sigma = " + detail::fmt(3 * sigma) + ")",
                        sw);
}

// ---------------------------------------------------------------------------
// Unequal degree-d polynomials agree on at most d points (exhaustive scan).

struct ComparisonOptions {
  std::size_t pairs = 1000;
  std::size_t max_degree = 8;
  std::uint64_t seed = 0;
};

inline Report comparison_theorem(const ComparisonOptions& o) {
  using G = F97;
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  std::size_t violations = 0, worst_slack = o.max_degree;
  for (std::size_t i = 0; i < o.pairs; ++i) {
    const std::size_t d = 1 + rng() % o.max_degree;
    Polynomial<G> f = detail::random_poly<G>(rng, rng() % (d + 1));
    Polynomial<G> g = detail::random_poly<G>(rng, rng() % (d + 1));
    if (i % 2 == 0) {
      // Force d agreements half the time: g = f + c * prod (x - s_j).
      std::vector<G> roots;
      for (std::size_t j = 0; j < d; ++j) roots.push_back(G(rng() % G::kModulus));
      g = f + polynomial_from_roots<G>(roots) * Polynomial<G>::constant(G(1 + rng() % (G::kModulus - 1)));
    }
    if (f == g) continue;
    std::size_t agree = 0;
    for (std::uint64_t x = 0; x < G::kModulus; ++x) agree += f(G(x)) == g(G(x));
    if (agree > d) ++violations;
    worst_slack = std::min(worst_slack, d >= agree ? d - agree : 0);
  }
  Json rec{{"pairs", o.pairs}, {"max_degree", o.max_degree}, {"violations", violations}, {"min_slack", worst_slack}};
  return detail::finish("comparison-theorem", violations == 0, rec,
                        std::to_string(violations) + " pairs over F_97 exceeded d coincidences", sw);
}

// ---------------------------------------------------------------------------
// VDF experiments.

struct VdfCompletenessOptions {
  std::size_t instances = 1000;
  std::size_t prime_bits = 16;
  std::size_t max_log_t = 10;
  std::uint64_t seed = 0;
};

inline Report vdf_completeness(const VdfCompletenessOptions& o) {
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  std::size_t mismatches = 0, rejected = 0;
  for (std::size_t i = 0; i < o.instances; ++i) {
    ByteWriter seed;
    seed.u64(o.seed);
    seed.u64(i);
    auto [params, key] = vdf::setup(o.prime_bits, seed.bytes());
    params.t = 1 + rng() % (std::uint64_t{1} << o.max_log_t);
    const BigUint x = hash_to_group(seed.bytes(), params.n);
    auto proof = vdf::evaluate_and_prove(params, x);
    if (proof.y != vdf::eval_trapdoor(key, params, x)) ++mismatches;
    if (proof.pi != vdf::prove_trapdoor(key, params, x, proof.r)) ++mismatches;
    if (vdf::verify(params, x, proof) != vdf::VerifyStatus::kAccepted) ++rejected;
  }
  Json rec{{"instances", o.instances}, {"prime_bits", o.prime_bits}, {"max_t", std::uint64_t{1} << o.max_log_t},
           {"trapdoor_mismatches", mismatches}, {"rejected", rejected}};
  return detail::finish("vdf-completeness", mismatches == 0 && rejected == 0, rec,
                        std::to_string(mismatches) + " trapdoor mismatches, " + std::to_string(rejected) +
                            " honest proofs rejected out of " + std::to_string(o.instances),
                        sw);
}

struct VdfAsymmetryOptions {
  std::size_t log_t = 16;
  std::size_t prime_bits = 64;
  std::size_t lambda = vdf::kDefaultLambda;
  std::uint64_t seed = 0;
};

inline Report vdf_asymmetry(const VdfAsymmetryOptions& o) {
  detail::Stopwatch sw;
  ByteWriter seed;
  seed.u64(o.seed);
  auto [params, key] = vdf::setup(o.prime_bits, seed.bytes(), BigUint(1) << o.log_t, o.lambda);
  const BigUint x = hash_to_group(to_bytes("asymmetry"), params.n);
  vdf::OpCounter prover, verifier;
  auto proof = vdf::evaluate_and_prove(params, x, &prover);
  const auto status = vdf::verify(params, x, proof, &verifier);
  const BigUint residue = mod_pow(2, params.t, proof.r);
  const std::uint64_t bound = 2 * (bit_length(proof.r) + bit_length(residue)) + 8;
  const double ratio = static_cast<double>(prover.squarings) / static_cast<double>(std::max<std::uint64_t>(verifier.total(), 1));
  const bool pass = status == vdf::VerifyStatus::kAccepted && ratio >= 256 && verifier.total() <= bound;
  Json rec{{"t", std::uint64_t{1} << o.log_t}, {"prime_bits", o.prime_bits}, {"lambda", o.lambda},
           {"prover_squarings", prover.squarings}, {"prover_multiplications", prover.multiplications},
           {"verifier_ops", verifier.total()}, {"verifier_bound", bound}, {"ratio", ratio},
           {"status", vdf::to_string(status)}};
  return detail::finish("vdf-asymmetry", pass, rec,
                        "prover " + std::to_string(prover.squarings) + " squarings vs verifier " +
                            std::to_string(verifier.total()) + " multiplications (ratio " + detail::fmt(ratio) +
                            ", bound " + std::to_string(bound) + ")",
                        sw);
}

struct VdfTamperOptions {
  std::size_t perturbations = 100000;
  std::size_t prime_bits = 32;
  std::size_t log_t = 10;
  std::uint64_t seed = 0;
};

inline Report vdf_tamper(const VdfTamperOptions& o) {
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  ByteWriter seed;
  seed.u64(o.seed);
  const vdf::VdfParams params = vdf::setup(o.prime_bits, seed.bytes(), BigUint(1) << o.log_t).first;
  const BigUint x = hash_to_group(to_bytes("tamper"), params.n);
  const auto honest = vdf::evaluate_and_prove(params, x);
  auto random_element = [&] {
    BigUint v = 0;
    for (std::size_t i = 0; i < 4; ++i) v = (v << 64) | BigUint(rng());
    return BigUint(v % params.n);
  };
  std::size_t false_accepts = 0, tried = 0;
  for (std::size_t i = 0; i < o.perturbations; ++i) {
    vdf::VdfProof p = honest;
    switch (rng() % 4) {
      case 0: p.y = (p.y + 1 + rng() % 1000) % params.n; break;
      case 1: p.pi = (p.pi + 1 + rng() % 1000) % params.n; break;
      case 2: p.pi = random_element(); break;
      default:
        p.y = random_element();
        p.pi = random_element();
        break;
    }
    if (p.y == honest.y && p.pi == honest.pi) continue;
    ++tried;
    if (vdf::verify(params, x, p) == vdf::VerifyStatus::kAccepted) ++false_accepts;
  }
  Json rec{{"perturbations", tried}, {"false_accepts", false_accepts}, {"prime_bits", o.prime_bits}};
  return detail::finish("vdf-tamper", false_accepts == 0 && tried > 0, rec,
                        std::to_string(false_accepts) + " false accepts over " + std::to_string(tried) +
                            " perturbed proofs",
                        sw);
}

// ---------------------------------------------------------------------------
// FRI experiments.

struct FriGridOptions {
  std::uint64_t seed = 0;
};

template <class F = DefaultField>
Report fri_completeness(const FriGridOptions& o) {
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  std::size_t cases = 0, rejected = 0;
  Json failures = Json::array();
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    for (std::size_t blowup : {4u, 8u, 16u}) {
      for (std::size_t q : {4u, 20u}) {
        for (bool coset : {false, true}) {
          auto domain = coset ? EvaluationDomain<F>::coset(d * blowup, F::generator())
                              : EvaluationDomain<F>::subgroup(d * blowup);
          fri::FriParams<F> params(domain, d, q);
          auto f = detail::random_poly<F>(rng, rng() % d);
          Transcript tp("bench/fri"), tv("bench/fri");
          tp.absorb_u64("case", cases);
          tv.absorb_u64("case", cases);
          auto proof = fri::prove<F>(evaluate_domain(f, domain), params, tp);
          auto verdict = fri::verify(proof, params, tv);
          ++cases;
          if (!verdict) {
            ++rejected;
            failures.push_back({{"d", d}, {"blowup", blowup}, {"q", q}, {"coset", coset}, {"reason", verdict.reason}});
          }
        }
      }
    }
  }
  Json rec{{"cases", cases}, {"rejected", rejected}, {"failures", failures}};
  return detail::finish("fri-completeness", rejected == 0, rec,
                        std::to_string(cases - rejected) + "/" + std::to_string(cases) + " honest grid points accepted",
                        sw);
}

struct FriSoundnessOptions {
  std::size_t domain = 64;
  std::size_t degree = 4;
  std::size_t queries = 20;
  std::size_t trials = 1000;
  double threshold = 0.99;
  std::uint64_t seed = 0;
};

// The cheating prover commits to uniformly random evaluations and sends the
// majority final value.
template <class F = DefaultField>
Report fri_soundness(const FriSoundnessOptions& o) {
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  fri::FriParams<F> params(EvaluationDomain<F>::coset(o.domain, F::generator()), o.degree, o.queries);
  fri::ProverOptions cheat;
  cheat.lenient_final = true;
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < o.trials; ++i) {
    std::vector<F> evals(o.domain);
    for (auto& v : evals) v = F::random(rng);
    Transcript tp("bench/fri-far"), tv("bench/fri-far");
    tp.absorb_u64("trial", i);
    tv.absorb_u64("trial", i);
    auto proof = fri::prove<F>(evals, params, tp, cheat);
    if (!fri::verify(proof, params, tv)) ++rejected;
  }
  const double rate = static_cast<double>(rejected) / static_cast<double>(o.trials);
  Json rec{{"domain", o.domain}, {"d", o.degree}, {"queries", o.queries}, {"trials", o.trials},
           {"rejected", rejected}, {"rate", rate}, {"threshold", o.threshold}};
  return detail::finish("fri-soundness", rate >= o.threshold, rec,
                        "random functions rejected " + std::to_string(rejected) + "/" + std::to_string(o.trials) +
                            " (rate " + detail::fmt(rate) + ")",
                        sw);
}

// ---------------------------------------------------------------------------
// STARK experiments.

struct StarkMutationOptions {
  std::size_t length = 8;
  std::size_t blowup = 8;
  std::size_t queries = 20;
  std::size_t mutations = 100;
  double threshold = 0.99;
  std::uint64_t seed = 0;
};

template <class F = DefaultField>
Report stark_mutation(const StarkMutationOptions& o) {
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  auto prog = stark::fibonacci_program<F>(o.length);
  stark::StarkParams params{o.blowup, o.queries, false, 0};
  const bool honest = static_cast<bool>(stark::verify(stark::prove(prog.trace, prog.cs, params), prog.cs, params));
  stark::ProverOptions cheat;
  cheat.skip_constraint_check = true;
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < o.mutations; ++i) {
    auto trace = prog.trace;
    trace.at(rng() % o.length, 0) += F(1 + rng() % 1000);
    if (!stark::verify(stark::prove(trace, prog.cs, params, cheat), prog.cs, params)) ++rejected;
  }
  const double rate = static_cast<double>(rejected) / static_cast<double>(o.mutations);
  Json rec{{"length", o.length}, {"blowup", o.blowup}, {"queries", o.queries}, {"honest_accepted", honest},
           {"mutations", o.mutations}, {"rejected", rejected}, {"rate", rate}};
  return detail::finish("stark-mutation", honest && rate >= o.threshold, rec,
                        std::string("honest proof ") + (honest ? "accepted" : "REJECTED") + ", mutated traces rejected " +
                            std::to_string(rejected) + "/" + std::to_string(o.mutations),
                        sw);
}

struct ScalabilityOptions {
  std::size_t log_small = 10;
  std::size_t log_large = 14;
  std::size_t blowup = 8;
  std::size_t queries = 20;
  std::size_t repetitions = 3;
};

template <class F = DefaultField>
Report stark_scalability(const ScalabilityOptions& o) {
  detail::Stopwatch sw;
  stark::StarkParams params{o.blowup, o.queries, false, 0};
  struct Point {
    std::size_t bytes = 0;
    std::uint64_t verifier_ops = 0;
    double prover_seconds = 0;
    bool accepted = false;
  };
  auto measure = [&](std::size_t log_n) {
    auto prog = stark::fibonacci_program<F>(std::size_t{1} << log_n);
    Point pt;
    pt.prover_seconds = 1e300;
    stark::StarkProof<F> proof;
    for (std::size_t r = 0; r < std::max<std::size_t>(o.repetitions, 1); ++r) {
      detail::Stopwatch t;
      proof = stark::prove(prog.trace, prog.cs, params);
      pt.prover_seconds = std::min(pt.prover_seconds, t.seconds());
    }
    pt.bytes = proof.serialize().size();
    FieldOpScope ops;
    pt.accepted = static_cast<bool>(stark::verify(proof, prog.cs, params));
    pt.verifier_ops = ops.count();
    return pt;
  };
  const Point a = measure(o.log_small), b = measure(o.log_large);
  const double size_ratio = static_cast<double>(b.bytes) / static_cast<double>(a.bytes);
  const double ops_ratio = static_cast<double>(b.verifier_ops) / static_cast<double>(a.verifier_ops);
  const double time_ratio = b.prover_seconds / a.prover_seconds;
  const bool pass = a.accepted && b.accepted && size_ratio < 4 && ops_ratio < 4 && time_ratio <= 32;
  auto point_json = [](const Point& p) {
    return Json{{"proof_bytes", p.bytes}, {"verifier_ops", p.verifier_ops}, {"prover_seconds", p.prover_seconds},
                {"accepted", p.accepted}};
  };
  Json rec{{"small", point_json(a)}, {"large", point_json(b)}, {"size_ratio", size_ratio},
           {"verifier_ops_ratio", ops_ratio}, {"prover_time_ratio", time_ratio},
           {"log_small", o.log_small}, {"log_large", o.log_large}};
  return detail::finish("stark-scalability", pass, rec,
                        "trace 2^" + std::to_string(o.log_small) + " -> 2^" + std::to_string(o.log_large) +
                            ": proof size x" + detail::fmt(size_ratio, 3) + ", verifier ops x" +
                            detail::fmt(ops_ratio, 3) + ", prover time x" + detail::fmt(time_ratio, 3),
                        sw);
}

struct ZkOptions {
  std::size_t proofs = 1000;
  std::size_t length = 8;
  std::size_t blowup = 8;
  std::size_t queries = 20;
};

template <class F = DefaultField>
Report stark_zk(const ZkOptions& o) {
  detail::Stopwatch sw;
  auto prog = stark::fibonacci_program<F>(o.length);
  std::size_t rejected = 0, inside = 0, opened = 0;
  std::set<Bytes> distinct;
  for (std::size_t seed = 0; seed < o.proofs; ++seed) {
    stark::StarkParams params{o.blowup, o.queries, true, seed};
    auto proof = stark::prove(prog.trace, prog.cs, params);
    if (!stark::verify(proof, prog.cs, params)) ++rejected;
    auto lde = stark::lde_domain<F>(proof.trace_rows, params);
    for (std::size_t idx : stark::opened_indices(proof, params)) {
      ++opened;
      if (lde.element(idx).pow(proof.trace_rows) == F::one()) ++inside;
    }
    distinct.insert(proof.serialize());
  }
  const bool pass = rejected == 0 && inside == 0 && distinct.size() == o.proofs;
  Json rec{{"proofs", o.proofs}, {"rejected", rejected}, {"opened_indices", opened}, {"inside_trace_subgroup", inside},
           {"distinct_proofs", distinct.size()}};
  return detail::finish("stark-zk", pass, rec,
                        std::to_string(inside) + " of " + std::to_string(opened) +
                            " opened points in the trace subgroup, " + std::to_string(distinct.size()) + "/" +
                            std::to_string(o.proofs) + " distinct proofs, " + std::to_string(rejected) + " rejected",
                        sw);
}

// ---------------------------------------------------------------------------
// Homomorphic authenticator laws.

struct HauthOptions {
  std::size_t circuits = 1000;
  std::size_t forgeries = 100000;
  std::uint64_t seed = 0;
};

template <class F = DefaultField>
Report hauth_laws(const HauthOptions& o) {
  using namespace hauth;
  detail::Stopwatch sw;
  std::mt19937_64 rng(o.seed);
  auto label = [](std::size_t i, const std::string& delta) {
    return MultiLabel{to_bytes("l" + std::to_string(i)), to_bytes(delta)};
  };
  ByteWriter seed;
  seed.u64(o.seed);
  const auto key = AuthKey<F>::keygen(seed.bytes());

  std::size_t incomplete = 0;
  for (std::size_t c = 0; c < o.circuits; ++c) {
    auto circuit = detail::random_circuit<F>(rng, 3);
    Authenticator<F> a(key);
    std::vector<F> msgs;
    std::vector<Tag<F>> tags;
    std::vector<MultiLabel> labels;
    for (std::size_t i = 0; i < circuit.num_inputs(); ++i) {
      msgs.push_back(F::random(rng));
      labels.push_back(label(i, "c" + std::to_string(c)));
      tags.push_back(a.auth(msgs.back(), labels.back()));
    }
    auto out = eval<F>(circuit, tags);
    if (verify<F>(key, circuit, labels, out, circuit.template evaluate<F>(msgs)) != VerifyStatus::kAccepted) {
      ++incomplete;
    }
  }

  std::size_t load_mismatches = 0;
  for (std::size_t c = 0; c < o.circuits; ++c) {
    auto circuit = detail::random_circuit<F>(rng, 1);
    std::vector<Bytes> ls;
    for (std::size_t i = 0; i < circuit.num_inputs(); ++i) ls.push_back(to_bytes("l" + std::to_string(i)));
    auto pre = amortize_offline<F>(key, circuit, ls);
    const Bytes delta = to_bytes("delta-" + std::to_string(rng()));
    std::vector<F> r;
    for (const auto& l : ls) r.push_back(label_randomness(key, MultiLabel{l, delta}));
    if (load(pre, key, delta) != circuit.template evaluate<F>(r)) ++load_mismatches;
  }

  std::size_t forged = 0;
  {
    hauth::Circuit<F> circuit(2);
    circuit.mul(0, 1);
    std::vector<MultiLabel> labels{label(0, "forge"), label(1, "forge")};
    for (std::size_t i = 0; i < o.forgeries; ++i) {
      Tag<F> t{detail::random_poly<F>(rng, rng() % 3)};
      if (verify<F>(key, circuit, labels, t, t.poly(F::zero())) == VerifyStatus::kAccepted) ++forged;
    }
  }

  std::size_t mk_failures = 0;
  {
    ByteWriter seed_b;
    seed_b.u64(o.seed + 1);
    const auto key_b = AuthKey<F>::keygen(seed_b.bytes());
    for (std::size_t c = 0; c < o.circuits; ++c) {
      auto circuit = detail::random_circuit<F>(rng, 2);
      std::vector<F> msgs, r;
      std::vector<MultiKeyTag<F>> tags;
      std::vector<SlottedLabel> labels;
      for (std::size_t i = 0; i < circuit.num_inputs(); ++i) {
        const int slot = static_cast<int>(rng() % 2);
        const auto& k = slot == 0 ? key : key_b;
        labels.push_back({label(i, "mk" + std::to_string(c)), slot});
        msgs.push_back(F::random(rng));
        r.push_back(label_randomness(k, labels.back().label));
        tags.push_back(auth_mk(k, msgs.back(), labels.back().label, slot));
      }
      auto out = eval_mk<F>(circuit, tags);
      const F y = circuit.template evaluate<F>(msgs);
      const bool oracle = out.poly(key.sk, key_b.sk) == circuit.template evaluate<F>(r) &&
                          out.poly(F::zero(), F::zero()) == y;
      if (!oracle || verify_mk<F>(key, key_b, circuit, labels, out, y) != VerifyStatus::kAccepted) ++mk_failures;
    }
  }

  const bool pass = incomplete == 0 && load_mismatches == 0 && forged == 0 && mk_failures == 0;
  Json rec{{"circuits", o.circuits}, {"incomplete", incomplete}, {"load_mismatches", load_mismatches},
           {"forgeries", o.forgeries}, {"forged", forged}, {"multi_key_failures", mk_failures}};
  return detail::finish("hauth-laws", pass, rec,
                        std::to_string(incomplete) + " incomplete, " + std::to_string(load_mismatches) +
                            " load mismatches, " + std::to_string(forged) + "/" + std::to_string(o.forgeries) +
                            " forgeries accepted, " + std::to_string(mk_failures) + " multi-key failures",
                        sw);
}

}  // namespace vck::bench
