#include <random>
#include <set>
#include <string>

#include "gtest/gtest.h"

#include "vck/hauth/group.hpp"
#include "vck/hauth/hauth.hpp"

namespace vck::hauth {
namespace {

using F = DefaultField;

MultiLabel label(std::uint64_t i, std::string delta = "d0") {
  return {to_bytes("l" + std::to_string(i)), to_bytes(delta)};
}

// Random circuit with at most 8 gates and multiplicative depth at most 3.
template <class Field>
Circuit<Field> random_circuit(std::mt19937_64& rng, std::size_t max_depth = 3) {
  std::size_t inputs = 1 + rng() % 4;
  Circuit<Field> c(inputs);
  std::vector<std::size_t> depth(inputs, 0);
  std::size_t gates = 1 + rng() % 8;
  for (std::size_t g = 0; g < gates; ++g) {
    std::size_t a = rng() % depth.size();
    std::size_t b = rng() % depth.size();
    switch (rng() % 4) {
      case 0:
        c.add(a, b);
        depth.push_back(std::max(depth[a], depth[b]));
        break;
      case 1:
        if (std::max(depth[a], depth[b]) + 1 <= max_depth) {
          c.mul(a, b);
          depth.push_back(std::max(depth[a], depth[b]) + 1);
        } else {
          c.add(a, b);
          depth.push_back(std::max(depth[a], depth[b]));
        }
        break;
      case 2:
        c.add_const(a, Field::random(rng));
        depth.push_back(depth[a]);
        break;
      default:
        c.mul_const(a, Field::random(rng));
        depth.push_back(depth[a]);
        break;
    }
  }
  return c;
}

TEST(HauthTest, KeygenIsDeterministicAndNonzero) {
  auto a = AuthKey<F>::keygen(to_bytes("seed"));
  auto b = AuthKey<F>::keygen(to_bytes("seed"));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.sk.is_zero());
  auto small = AuthKey<F13>::keygen(to_bytes("seed"));
  EXPECT_FALSE(small.sk.is_zero());
}

TEST(HauthTest, DistinctSeedsGiveDistinctKeys) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    ByteWriter w;
    w.u64(i);
    seen.insert(AuthKey<F>::keygen(w.bytes()).sk.value());
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(HauthTest, InterpolatedTagSmallField) {
  auto t = interpolate_tag(F13(2), F13(5), F13(9));
  EXPECT_EQ(t.poly, Polynomial<F13>::from_values({5, 2}));
  EXPECT_EQ(t.poly(F13(2)), F13(9));
  auto flat = interpolate_tag(F13(2), F13(7), F13(7));
  EXPECT_EQ(flat.poly, Polynomial<F13>::constant(F13(7)));
}

TEST(HauthTest, MulOfTagsSmallField) {
  auto s1 = interpolate_tag(F13(2), F13(5), F13(9));
  auto s2 = interpolate_tag(F13(2), F13(3), F13(11));
  EXPECT_EQ(s2.poly, Polynomial<F13>::from_values({3, 4}));
  Circuit<F13> c(2);
  c.mul(0, 1);
  std::vector<Tag<F13>> tags{s1, s2};
  auto y = eval(c, std::span<const Tag<F13>>(tags));
  EXPECT_EQ(y.poly, Polynomial<F13>::from_values({2, 0, 8}));
  EXPECT_EQ(y.poly(F13(2)), F13(9) * F13(11));
  EXPECT_EQ(y.poly(F13(0)), F13(2));
}

TEST(HauthTest, AuthPostconditionsAndReuse) {
  std::mt19937_64 rng(1);
  auto key = AuthKey<F>::keygen(to_bytes("k"));
  Authenticator<F> auth(key);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    F m = F::random(rng);
    auto t = auth.auth(m, label(i));
    EXPECT_EQ(t.poly(F::zero()), m);
    EXPECT_EQ(t.poly(key.sk), label_randomness(key, label(i)));
    EXPECT_LE(t.poly.degree().value_or(0), 1u);
  }
  EXPECT_THROW(auth.auth(F(1), label(3)), UsageError);
  EXPECT_NO_THROW(auth.auth(F(1), label(3, "other")));
}

TEST(HauthTest, AddSelfEqualsScaleByTwo) {
  auto key = AuthKey<F>::keygen(to_bytes("k"));
  Authenticator<F> auth(key);
  std::vector<Tag<F>> tags{auth.auth(F(42), label(0))};
  Circuit<F> add(1);
  add.add(0, 0);
  Circuit<F> scale(1);
  scale.mul_const(0, F(2));
  EXPECT_EQ(eval(add, std::span<const Tag<F>>(tags)), eval(scale, std::span<const Tag<F>>(tags)));
  EXPECT_EQ(eval(Circuit<F>::identity(), std::span<const Tag<F>>(tags)), tags[0]);
}

TEST(HauthTest, HomomorphismLaws) {
  std::mt19937_64 rng(2);
  auto key = AuthKey<F>::keygen(to_bytes("laws"));
  Authenticator<F> auth(key);
  Circuit<F> add(2), mul(2);
  add.add(0, 1);
  mul.mul(0, 1);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    F m1 = F::random(rng), m2 = F::random(rng);
    auto l1 = label(2 * i), l2 = label(2 * i + 1);
    std::vector<Tag<F>> tags{auth.auth(m1, l1), auth.auth(m2, l2)};
    F r1 = label_randomness(key, l1), r2 = label_randomness(key, l2);
    auto s = eval(add, std::span<const Tag<F>>(tags));
    auto p = eval(mul, std::span<const Tag<F>>(tags));
    ASSERT_EQ(s.poly(key.sk), r1 + r2);
    ASSERT_EQ(s.poly(F::zero()), m1 + m2);
    ASSERT_EQ(p.poly(key.sk), r1 * r2);
    ASSERT_EQ(p.poly(F::zero()), m1 * m2);
  }
}

TEST(HauthTest, CompletenessOnRandomCircuits) {
  std::mt19937_64 rng(3);
  auto key = AuthKey<F>::keygen(to_bytes("complete"));
  Authenticator<F> auth(key);
  std::uint64_t next = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto c = random_circuit<F>(rng);
    std::vector<F> msgs;
    std::vector<MultiLabel> labels;
    std::vector<Tag<F>> tags;
    for (std::size_t i = 0; i < c.num_inputs(); ++i) {
      msgs.push_back(F::random(rng));
      labels.push_back(label(next++));
      tags.push_back(auth.auth(msgs.back(), labels.back()));
    }
    auto y = eval(c, std::span<const Tag<F>>(tags));
    F claimed = c.evaluate(std::span<const F>(msgs));
    ASSERT_EQ(verify(key, c, std::span<const MultiLabel>(labels), y, claimed), VerifyStatus::kAccepted);
  }
}

TEST(HauthTest, VerifyDiagnostics) {
  auto key = AuthKey<F>::keygen(to_bytes("diag"));
  Authenticator<F> auth(key);
  std::vector<MultiLabel> labels{label(0), label(1)};
  std::vector<Tag<F>> tags{auth.auth(F(6), labels[0]), auth.auth(F(7), labels[1])};
  Circuit<F> c(2);
  c.mul(0, 1);
  auto y = eval(c, std::span<const Tag<F>>(tags));
  std::span<const MultiLabel> ls(labels);
  EXPECT_EQ(verify(key, c, ls, y, F(42)), VerifyStatus::kAccepted);
  EXPECT_EQ(verify(key, c, ls, y, F(43)), VerifyStatus::kOutputCheckFailed);

  auto coeffs = std::vector<F>(y.poly.coefficients().begin(), y.poly.coefficients().end());
  coeffs[1] += F::one();
  EXPECT_EQ(verify(key, c, ls, Tag<F>{Polynomial<F>(coeffs)}, F(42)), VerifyStatus::kKeyCheckFailed);

  auto high = y;
  high.poly += Polynomial<F>::monomial(F::one(), 5);
  EXPECT_EQ(verify(key, c, ls, high, F(42)), VerifyStatus::kDegreeCheckFailed);
}

TEST(HauthTest, CoefficientFlipIsRejected) {
  std::mt19937_64 rng(4);
  auto key = AuthKey<F>::keygen(to_bytes("flip"));
  Authenticator<F> auth(key);
  int accepted = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    MultiLabel l = label(i);
    F m = F::random(rng);
    auto t = auth.auth(m, l);
    auto coeffs = std::vector<F>(2);
    coeffs[0] = t.poly.coefficient(0);
    coeffs[1] = t.poly.coefficient(1) + F(1 + rng() % 1000);
    std::vector<MultiLabel> ls{l};
    if (verify(key, Circuit<F>::identity(), std::span<const MultiLabel>(ls), Tag<F>{Polynomial<F>(coeffs)}, m) ==
        VerifyStatus::kAccepted) {
      ++accepted;
    }
  }
  EXPECT_EQ(accepted, 0);
}

TEST(HauthTest, RandomTagForgeryRate) {
  std::mt19937_64 rng(5);
  auto key = AuthKey<F>::keygen(to_bytes("forge"));
  Circuit<F> c(2);
  c.mul(0, 1);
  std::vector<MultiLabel> ls{label(0), label(1)};
  const F claimed(1234);
  int accepted = 0;
  for (int i = 0; i < 100000; ++i) {
    Tag<F> t{Polynomial<F>(std::vector<F>{claimed, F::random(rng), F::random(rng)})};
    if (verify(key, c, std::span<const MultiLabel>(ls), t, claimed) == VerifyStatus::kAccepted) ++accepted;
  }
  EXPECT_EQ(accepted, 0);
}

TEST(HauthTest, MultiKeySmallFieldProduct) {
  auto p = auth_mk_with_randomness(F13(2), F13(5), F13(9), 0);
  auto q = auth_mk_with_randomness(F13(4), F13(3), F13(11), 1);
  Circuit<F13> c(2);
  c.mul(0, 1);
  std::vector<MultiKeyTag<F13>> tags{p, q};
  auto y = eval_mk(c, std::span<const MultiKeyTag<F13>>(tags));
  EXPECT_EQ(y.poly(F13(2), F13(4)), F13(8));
  EXPECT_EQ(y.poly(F13(0), F13(0)), F13(2));

  Circuit<F13> s(2);
  s.add(0, 1);
  auto sum = eval_mk(s, std::span<const MultiKeyTag<F13>>(tags));
  EXPECT_EQ(sum.poly(F13(2), F13(4)), F13(9) + F13(11));
}

TEST(HauthTest, MultiKeyVerifyAndSlotBinding) {
  std::mt19937_64 rng(6);
  auto ka = AuthKey<F>::keygen(to_bytes("alice"));
  auto kb = AuthKey<F>::keygen(to_bytes("bob"));
  MultiKeySession<F> session;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    F ma = F::random(rng), mb = F::random(rng);
    std::vector<SlottedLabel> ls{{label(trial), 0}, {label(trial), 1}};
    std::vector<MultiKeyTag<F>> tags{session.auth(ka, ma, ls[0].label, 0), session.auth(kb, mb, ls[1].label, 1)};
    Circuit<F> c(2);
    c.add_const(c.mul(0, 1), F(3));
    auto y = eval_mk(c, std::span<const MultiKeyTag<F>>(tags));
    ASSERT_EQ(verify_mk(ka, kb, c, std::span<const SlottedLabel>(ls), y, ma * mb + F(3)), VerifyStatus::kAccepted);
    ASSERT_NE(verify_mk(ka, kb, c, std::span<const SlottedLabel>(ls), y, ma * mb), VerifyStatus::kAccepted);
    ASSERT_NE(verify_mk(kb, ka, c, std::span<const SlottedLabel>(ls), y, ma * mb + F(3)), VerifyStatus::kAccepted);
  }
  EXPECT_THROW(session.auth(kb, F(1), label(999), 0), UsageError);
  EXPECT_THROW(session.auth(ka, F(1), label(0), 0), UsageError);
}

TEST(HauthTest, MultiKeySinglePartyMatchesSingleKey) {
  auto key = AuthKey<F>::keygen(to_bytes("solo"));
  auto single = interpolate_tag(key.sk, F(10), label_randomness(key, label(0)));
  auto mk = auth_mk(key, F(10), label(0), 0);
  for (std::uint64_t x : {0u, 1u, 77u}) EXPECT_EQ(mk.poly(F(x), F(12345)), single.poly(F(x)));
  EXPECT_EQ(mk.poly.degree_in(1), 0u);
}

TEST(HauthTest, TagSerializationRoundTrip) {
  auto key = AuthKey<F>::keygen(to_bytes("ser"));
  auto t = interpolate_tag(key.sk, F(3), F(8));
  auto bytes = serialize_tag(t);
  EXPECT_EQ(bytes[0], 1);
  EXPECT_EQ(parse_tag<F>(bytes), t);
  EXPECT_THROW(parse_mk_tag<F>(bytes), ParseError);
  auto mk = auth_mk(key, F(3), label(0), 1);
  auto mk_bytes = serialize_tag(mk);
  EXPECT_EQ(mk_bytes[0], 2);
  EXPECT_EQ(parse_mk_tag<F>(mk_bytes), mk);
  EXPECT_THROW(parse_tag<F17>(bytes), ParseError);

  ByteWriter w;
  key.write(w);
  ByteReader r(w.bytes());
  EXPECT_EQ(AuthKey<F>::read(r), key);
}

TEST(HauthTest, AmortizedIdentityAndProduct) {
  std::mt19937_64 rng(7);
  auto key = AuthKey<F>::keygen(to_bytes("amortized"));
  std::vector<Bytes> l1{to_bytes("a")};
  auto pre_id = amortize_offline(key, Circuit<F>::identity(), std::span<const Bytes>(l1));
  EXPECT_EQ(pre_id.c, Polynomial<F>(std::vector<F>{prf_constant_part(key, l1[0]), F::one()}));

  Circuit<F> xy(2);
  xy.mul(0, 1);
  std::vector<Bytes> l2{to_bytes("x"), to_bytes("y")};
  auto pre = amortize_offline(key, xy, std::span<const Bytes>(l2));
  EXPECT_LE(pre.c.degree().value_or(0), 2u);
  for (int i = 0; i < 1000; ++i) {
    ByteWriter w;
    w.u64(rng());
    Bytes delta = w.bytes();
    F direct = label_randomness(key, {l2[0], delta}) * label_randomness(key, {l2[1], delta});
    ASSERT_EQ(load(pre, key, delta), direct);
  }
  EXPECT_NE(load(pre, key, to_bytes("d1")), load(pre, key, to_bytes("d2")));

  Circuit<F> deep(1);
  deep.mul(deep.mul(0, 0), 0);
  EXPECT_THROW(amortize_offline(key, deep, std::span<const Bytes>(l1)), UsageError);
}

TEST(HauthTest, AmortizedVerificationMatchesDirect) {
  std::mt19937_64 rng(8);
  auto key = AuthKey<F>::keygen(to_bytes("amortized-verify"));
  Authenticator<F> auth(key);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_circuit<F>(rng, 1);
    std::vector<Bytes> ls;
    std::vector<MultiLabel> labels;
    std::vector<F> msgs;
    std::vector<Tag<F>> tags;
    Bytes delta = to_bytes("dataset-" + std::to_string(trial));
    for (std::size_t i = 0; i < c.num_inputs(); ++i) {
      ls.push_back(to_bytes("col" + std::to_string(i)));
      labels.push_back({ls.back(), delta});
      msgs.push_back(F::random(rng));
      tags.push_back(auth.auth(msgs.back(), labels.back()));
    }
    auto pre = amortize_offline(key, c, std::span<const Bytes>(ls));
    std::vector<F> r;
    for (const auto& l : labels) r.push_back(label_randomness(key, l));
    ASSERT_EQ(load(pre, key, delta), c.evaluate(std::span<const F>(r)));
    auto y = eval(c, std::span<const Tag<F>>(tags));
    F claimed = c.evaluate(std::span<const F>(msgs));
    ASSERT_EQ(verify_amortized(pre, key, delta, y, claimed), VerifyStatus::kAccepted);
    ASSERT_EQ(verify_amortized(pre, key, delta, y, claimed + F::one()), VerifyStatus::kOutputCheckFailed);
  }
}

TEST(HauthTest, GroupLiftEvalMatchesPlainEvaluation) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    std::vector<F> coeffs(1 + rng() % 5);
    for (auto& c : coeffs) c = F::random(rng);
    Polynomial<F> p(coeffs);
    F x = F::random(rng);
    ASSERT_EQ(group_eval(group_lift(p), x).exponent, p(x));
  }
}

TEST(HauthTest, GroupArithmeticAndPairingBudget) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 200; ++i) {
    Polynomial<F> p(std::vector<F>{F::random(rng), F::random(rng), F::random(rng)});
    Polynomial<F> q(std::vector<F>{F::random(rng), F::random(rng)});
    F c = F::random(rng), x = F::random(rng);
    auto gp = group_lift(p), gq = group_lift(q);
    ASSERT_EQ(group_eval(gp + gq, x).exponent, (p + q)(x));
    ASSERT_EQ(group_eval(gp + c, x).exponent, (p + c)(x));
    ASSERT_EQ(group_eval(gp * c, x).exponent, (p * c)(x));
    auto prod = gp * gq;
    ASSERT_EQ(group_eval(prod, x).exponent, (p * q)(x));
    ASSERT_EQ(group_eval(prod, x).level, GroupLevel::kTarget);
    ASSERT_THROW(prod * gq, UsageError);
  }
}

TEST(HauthTest, GroupProductKeepsConstantInClear) {
  auto p = group_lift(Polynomial<F>::from_values({3, 5}));
  auto q = group_lift(Polynomial<F>::from_values({7, 11}));
  auto r = p * q;
  EXPECT_EQ(r.constant(), F(21));
  ASSERT_EQ(r.higher().size(), 2u);
  EXPECT_EQ(r.higher()[0].exponent, F(5 * 7 + 11 * 3));
  EXPECT_EQ(r.higher()[1].exponent, F(55));
}

TEST(HauthTest, CircuitParsing) {
  auto c = Circuit<F>::parse("inputs 2\nmul 0 1   # product\naddc 2 5\n");
  EXPECT_EQ(c.num_inputs(), 2u);
  EXPECT_EQ(c.degree(), 2u);
  EXPECT_EQ(c.mul_depth(), 1u);
  std::vector<F> in{F(3), F(4)};
  EXPECT_EQ(c.evaluate(std::span<const F>(in)), F(17));
  EXPECT_THROW(Circuit<F>::parse("mul 0 1"), UsageError);
  EXPECT_THROW(Circuit<F>::parse("inputs 1\nmul 0 3"), UsageError);
}

}  // namespace
}  // namespace vck::hauth
