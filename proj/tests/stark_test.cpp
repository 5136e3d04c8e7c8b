#include <random>
#include <set>

#include "gtest/gtest.h"

#include "vck/stark/stark.hpp"
#include "vck/stark/two_poly.hpp"

namespace vck::stark {
namespace {

using F = DefaultField;

StarkParams params(std::size_t blowup = 8, std::size_t queries = 20, bool zk = false, std::uint64_t seed = 0) {
  StarkParams p;
  p.blowup = blowup;
  p.num_queries = queries;
  p.zk = zk;
  p.zk_seed = seed;
  return p;
}

std::vector<F> values(std::initializer_list<std::uint64_t> v) {
  std::vector<F> out;
  for (auto x : v) out.push_back(F(x));
  return out;
}

// (a, b) -> (b, a + b) over two columns, window 2.
Program<F> two_column_fibonacci(std::size_t n) {
  Program<F> p;
  std::vector<F> a{F(1)}, b{F(1)};
  while (a.size() < n) {
    F na = b.back(), nb = a.back() + b.back();
    a.push_back(na);
    b.push_back(nb);
  }
  p.trace = TraceTable<F>({a, b});
  p.cs.num_columns = 2;
  p.cs.trace_length = n;
  p.cs.boundaries = {{0, 0, F(1)}, {1, 0, F(1)}, {1, n - 1, b.back()}};
  WindowPredicate<F> first, second;
  first.add(F(1), {{Cell{1, 0}, 1}}).add(-F(1), {{Cell{0, 1}, 1}});
  second.add(F(1), {{Cell{1, 1}, 1}}).add(-F(1), {{Cell{0, 0}, 1}}).add(-F(1), {{Cell{0, 1}, 1}});
  p.cs.transitions = {{"shift", first}, {"sum", second}};
  return p;
}

TEST(StarkTest, FibonacciTrace) {
  EXPECT_EQ(trace_fibonacci<F>(8).column(0), values({1, 1, 2, 3, 5, 8, 13, 21}));
  EXPECT_EQ(trace_fibonacci<F>(2).column(0), values({1, 1}));
  auto prog = fibonacci_program<F>(8);
  EXPECT_FALSE(first_violation(prog.trace, prog.cs).has_value());
  for (std::size_t row = 0; row + 2 < 8; ++row) {
    const auto& c = prog.trace.column(0);
    EXPECT_EQ(c[row + 2], c[row + 1] + c[row]);
  }
}

TEST(StarkTest, InterpolationAndLowDegreeExtension) {
  auto trace = trace_fibonacci<F>(8);
  auto domain = EvaluationDomain<F>::subgroup(8);
  auto polys = interpolate_trace(trace, domain);
  ASSERT_EQ(polys.size(), 1u);
  EXPECT_LE(polys[0].degree().value_or(0), 7u);
  std::vector<std::pair<F, F>> pts;
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(polys[0](domain.element(i)), trace.at(i, 0));
    pts.emplace_back(domain.element(i), trace.at(i, 0));
  }
  EXPECT_EQ(polys[0], interpolate<F>(pts));

  auto lde = lde_domain<F>(8, params(8));
  auto ext = low_degree_extend<F>(polys, lde);
  ASSERT_EQ(ext[0].size(), 64u);
  for (std::size_t k = 0; k < 64; k += 7) EXPECT_EQ(ext[0][k], polys[0](lde.element(k)));

  TraceTable<F> flat({std::vector<F>(8, F(5))});
  auto flat_polys = interpolate_trace(flat, domain);
  EXPECT_EQ(low_degree_extend<F>(flat_polys, lde)[0], std::vector<F>(64, F(5)));
}

TEST(StarkTest, BoundaryQuotient) {
  auto prog = fibonacci_program<F>(8);
  auto domain = EvaluationDomain<F>::subgroup(8);
  auto polys = interpolate_trace(prog.trace, domain);
  auto q = boundary_quotient<F>(polys[0], prog.cs.boundaries, domain);
  EXPECT_TRUE(q.exact);
  EXPECT_EQ(q.quotient.degree().value_or(0), 7u - 3u);

  auto bad = prog.trace;
  bad.at(0, 0) = F(2);
  auto bad_polys = interpolate_trace(bad, domain);
  EXPECT_FALSE(boundary_quotient<F>(bad_polys[0], prog.cs.boundaries, domain).exact);

  std::vector<BoundaryConstraint<F>> none;
  EXPECT_EQ(boundary_quotient<F>(polys[0], none, domain).quotient, polys[0]);
}

TEST(StarkTest, TransitionQuotient) {
  auto prog = fibonacci_program<F>(8);
  auto domain = EvaluationDomain<F>::subgroup(8);
  auto polys = interpolate_trace(prog.trace, domain);
  const auto& tc = prog.cs.transitions[0];
  auto q = transition_quotient<F>(polys, tc, domain, prog.cs.transition_rows(tc));
  EXPECT_TRUE(q.exact);

  auto bad = prog.trace;
  bad.at(4, 0) += F(1);
  auto bad_polys = interpolate_trace(bad, domain);
  EXPECT_FALSE(transition_quotient<F>(bad_polys, tc, domain, 6).exact);
  auto v = first_violation(bad, prog.cs);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->row, 2u);

  TransitionConstraint<F> zero{"zero", WindowPredicate<F>().add(F(0), {{Cell{1, 0}, 1}})};
  EXPECT_TRUE(transition_quotient<F>(polys, zero, domain, 7).quotient.is_zero());
}

TEST(StarkTest, ExactnessFlagsMatchEvaluationScan) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::size_t{4} << (rng() % 5);  // 4..64
    auto prog = (trial % 2 == 0) ? fibonacci_program<F>(n) : squares_program<F>(F(3), n);
    auto trace = prog.trace;
    if (rng() % 4 != 0) trace.at(rng() % n, 0) += F(1 + rng() % 5);
    auto domain = EvaluationDomain<F>::subgroup(n);
    auto polys = interpolate_trace(trace, domain);
    bool exact = boundary_quotient<F>(polys[0], prog.cs.boundaries, domain).exact;
    for (const auto& tc : prog.cs.transitions) {
      exact = exact && transition_quotient<F>(polys, tc, domain, prog.cs.transition_rows(tc)).exact;
    }
    ASSERT_EQ(exact, !first_violation(trace, prog.cs).has_value()) << "trial " << trial;
  }
}

TEST(StarkTest, Composition) {
  std::vector<Polynomial<F>> one{Polynomial<F>::from_values({1, 2, 3})};
  std::vector<F> g{F(5)};
  EXPECT_EQ(compose<F>(one, g), one[0] * F(5));
  std::vector<Polynomial<F>> zeros(3);
  std::vector<F> gs{F(1), F(2), F(3)};
  EXPECT_TRUE(compose<F>(zeros, gs).is_zero());
  std::vector<Polynomial<F>> mixed{Polynomial<F>::from_values({1, 1}), Polynomial<F>::from_values({0, 0, 0, 4})};
  EXPECT_EQ(compose<F>(mixed, std::span<const F>(gs).first(2)).degree(), 3u);
}

TEST(StarkTest, FibonacciEightProvesAndVerifies) {
  auto prog = fibonacci_program<F>(8);
  auto p = params();
  auto proof = prove(prog.trace, prog.cs, p);
  auto verdict = verify(proof, prog.cs, p);
  EXPECT_TRUE(verdict) << verdict.reason;
  EXPECT_EQ(proof.openings.size(), 20u);
  EXPECT_EQ(proof.serialize(), prove(prog.trace, prog.cs, p).serialize());
  EXPECT_EQ(StarkProof<F>::deserialize(proof.serialize()), proof);
}

TEST(StarkTest, CompletenessGrid) {
  for (std::size_t n : {4u, 8u, 13u, 32u}) {
    for (std::size_t blowup : {4u, 8u, 16u}) {
      for (bool zk : {false, true}) {
        for (int program = 0; program < 3; ++program) {
          auto prog = program == 0 ? fibonacci_program<F>(n)
                                   : program == 1 ? squares_program<F>(F(7), n) : two_column_fibonacci(n);
          auto p = params(blowup, 8, zk, n);
          auto proof = prove(prog.trace, prog.cs, p);
          auto verdict = verify(proof, prog.cs, p);
          ASSERT_TRUE(verdict) << "n=" << n << " blowup=" << blowup << " zk=" << zk << " program=" << program
                               << ": " << verdict.reason;
        }
      }
    }
  }
}

TEST(StarkTest, MembershipConstraint) {
  std::vector<F> bits = values({1, 0, 1, 1, 0, 0, 1, 0});
  std::vector<F> allowed = values({0, 1});
  ConstraintSystem<F> cs;
  cs.num_columns = 1;
  cs.trace_length = 8;
  cs.boundaries = {{0, 0, F(1)}};
  cs.transitions = {{"bit", membership_predicate<F>(Cell{0, 0}, allowed)}};
  auto p = params();
  EXPECT_TRUE(verify(prove(TraceTable<F>({bits}), cs, p), cs, p));
  bits[3] = F(2);
  EXPECT_THROW(prove(TraceTable<F>({bits}), cs, p), ConstraintViolation);
}

TEST(StarkTest, ProverRefusesUnsatisfiedTrace) {
  auto prog = fibonacci_program<F>(8);
  prog.trace.at(5, 0) = F(0);
  try {
    prove(prog.trace, prog.cs, params());
    FAIL() << "expected a constraint violation";
  } catch (const ConstraintViolation& e) {
    EXPECT_NE(std::string(e.what()).find("fibonacci"), std::string::npos) << e.what();
  }
}

TEST(StarkTest, CheatingProverIsCaught) {
  std::mt19937_64 rng(2);
  auto base = fibonacci_program<F>(8);
  ProverOptions cheat;
  cheat.skip_constraint_check = true;
  int rejected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto trace = base.trace;
    trace.at(rng() % 8, 0) += F(1 + rng() % 1000);
    auto p = params();
    auto proof = prove(trace, base.cs, p, cheat);
    auto verdict = verify(proof, base.cs, p);
    if (!verdict) {
      ++rejected;
      EXPECT_EQ(verdict.status, VerifyStatus::kConstraintFailure);
    }
  }
  EXPECT_GE(rejected, 99);
}

TEST(StarkTest, TamperedProofsAreRejected) {
  auto prog = fibonacci_program<F>(16);
  auto p = params();
  auto proof = prove(prog.trace, prog.cs, p);

  auto comp = proof;
  comp.fri.queries[3].firsts[0] += F(1);
  EXPECT_FALSE(verify(comp, prog.cs, p));

  auto row = proof;
  row.openings[2].rows[1][0] += F(1);
  EXPECT_EQ(verify(row, prog.cs, p).status, VerifyStatus::kPathFailure);

  auto root = proof;
  root.trace_root[0] ^= 1;
  EXPECT_FALSE(verify(root, prog.cs, p));

  auto other_cs = prog.cs;
  other_cs.boundaries.back().value += F(1);
  EXPECT_FALSE(verify(proof, other_cs, p));

  auto bytes = proof.serialize();
  bytes.resize(bytes.size() / 2);
  EXPECT_THROW(StarkProof<F>::deserialize(bytes), ParseError);
}

TEST(StarkTest, ZeroKnowledgeStructure) {
  auto prog = fibonacci_program<F>(8);
  std::set<Bytes> distinct;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto p = params(8, 20, true, seed);
    auto proof = prove(prog.trace, prog.cs, p);
    ASSERT_TRUE(verify(proof, prog.cs, p));
    const std::size_t n = proof.trace_rows;
    auto lde = lde_domain<F>(n, p);
    for (std::size_t idx : opened_indices(proof, p)) {
      ASSERT_NE(lde.element(idx).pow(n), F::one());
    }
    distinct.insert(proof.serialize());
  }
  EXPECT_EQ(distinct.size(), 200u);
}

TEST(StarkTest, StatementDigestOrderingAndBinding) {
  EXPECT_EQ(zk_statement_digest(to_bytes("secret")), zk_statement_digest(to_bytes("secret")));
  auto prog = fibonacci_program<F>(8);
  prog.cs.statement = zk_statement_digest(to_bytes("secret"));
  std::vector<std::string> labels;
  ProverOptions opts;
  opts.transcript_labels = &labels;
  auto p = params();
  auto proof = prove(prog.trace, prog.cs, p, opts);
  ASSERT_GE(labels.size(), 4u);
  EXPECT_EQ(labels[0], "params");
  EXPECT_EQ(labels[1], "cs");
  EXPECT_EQ(labels[2], "statement");
  EXPECT_EQ(labels[3], "trace-root");
  EXPECT_TRUE(verify(proof, prog.cs, p));

  auto other = prog.cs;
  other.statement = zk_statement_digest(to_bytes("secreT"));
  auto other_proof = prove(prog.trace, other, p);
  EXPECT_EQ(other_proof.trace_root, proof.trace_root);
  EXPECT_NE(other_proof.fri.layer_roots, proof.fri.layer_roots);
  EXPECT_FALSE(verify(proof, other, p));
}

TEST(StarkTest, VerifierWorkGrowsPolylogarithmically) {
  auto p = params(8, 20);
  std::vector<double> normalized;
  for (std::size_t log_n = 6; log_n <= 12; ++log_n) {
    auto prog = fibonacci_program<F>(std::size_t{1} << log_n);
    auto proof = prove(prog.trace, prog.cs, p);
    FieldOpScope ops;
    ASSERT_TRUE(verify(proof, prog.cs, p));
    normalized.push_back(static_cast<double>(ops.count()) / (20.0 * log_n * log_n));
  }
  for (double v : normalized) EXPECT_LE(v, 8.0);
}

TEST(StarkTest, TwoPolyEquality) {
  std::mt19937_64 rng(3);
  std::vector<F> points;
  for (std::uint64_t i = 1; i <= 400; ++i) points.push_back(F(i));
  auto domain = EvaluationDomain<F>::explicit_points(points);
  std::vector<F> fc(5);
  for (auto& c : fc) c = F::random(rng);
  fc[4] = F(3);
  Polynomial<F> f(fc);
  std::vector<F> s{points[10], points[99], points[200], points[333]};
  auto g = f + polynomial_from_roots<F>(s);
  auto fe = evaluate_domain(f, domain), ge = evaluate_domain(g, domain);

  Transcript same("2poly");
  EXPECT_TRUE(probabilistic_poly_eq<F>(fe, fe, 4, same, 10));

  int accepted = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    Transcript t("2poly");
    t.absorb_u64("trial", static_cast<std::uint64_t>(i));
    accepted += probabilistic_poly_eq<F>(fe, ge, 4, t, 1);
  }
  const double rate = static_cast<double>(accepted) / trials;
  EXPECT_NEAR(rate, 0.01, 3 * std::sqrt(0.01 * 0.99 / trials));

  int triple = 0;
  for (int i = 0; i < 100000; ++i) {
    Transcript t("2poly-k3");
    t.absorb_u64("trial", static_cast<std::uint64_t>(i));
    triple += probabilistic_poly_eq<F>(fe, ge, 4, t, 3);
  }
  EXPECT_LE(triple, 1);
}

TEST(StarkTest, ConstraintSystemValidation) {
  auto prog = fibonacci_program<F>(8);
  auto cs = prog.cs;
  cs.boundaries.push_back({0, 0, F(1)});
  EXPECT_THROW(cs.validate(), UsageError);
  cs = prog.cs;
  cs.boundaries.push_back({3, 0, F(1)});
  EXPECT_THROW(cs.validate(), UsageError);
  cs = prog.cs;
  cs.boundaries.push_back({0, 8, F(1)});
  EXPECT_THROW(cs.validate(), UsageError);
  cs = prog.cs;
  cs.transitions[0].predicate.add(F(1), {{Cell{0, 0}, 9}});
  EXPECT_THROW(cs.validate(), UsageError);
  EXPECT_THROW(prove(prog.trace, prog.cs, params(2)), UsageError);
}

}  // namespace
}  // namespace vck::stark
