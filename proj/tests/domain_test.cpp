#include <random>
#include <set>

#include "gtest/gtest.h"

#include "vck/domain.hpp"

namespace vck {
namespace {

using D = EvaluationDomain<DefaultField>;

Polynomial<DefaultField> random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::vector<DefaultField> c(degree + 1);
  for (auto& v : c) v = DefaultField::random(rng);
  return Polynomial<DefaultField>(std::move(c));
}

TEST(DomainTest, SubgroupOfF17SizeFour) {
  auto d = EvaluationDomain<F17>::subgroup(4);
  auto pts = d.elements();
  std::set<std::uint64_t> got;
  for (auto p : pts) got.insert(p.value());
  EXPECT_EQ(got, (std::set<std::uint64_t>{1, 4, 13, 16}));
  EXPECT_EQ(vanishing_poly(d), Polynomial<F17>::from_values({-1, 0, 0, 0, 1}));
  EXPECT_EQ(vanishing_eval(d, F17(4)), F17::zero());
  EXPECT_EQ(vanishing_eval(d, F17(2)), F17(15));
}

TEST(DomainTest, SubgroupInvariants) {
  for (std::size_t n = 2; n <= 1024; n <<= 1) {
    auto d = D::subgroup(n);
    EXPECT_EQ(d.generator().pow(n), DefaultField::one());
    EXPECT_NE(d.generator().pow(n / 2), DefaultField::one());
    // Closed under negation with partner(i) = i + n/2.
    for (std::size_t i = 0; i < n / 2; ++i) EXPECT_EQ(d.element(i + n / 2), -d.element(i));
  }
  EXPECT_THROW(D::subgroup(12), UsageError);
}

TEST(DomainTest, ExplicitDomain) {
  auto d = EvaluationDomain<F13>::explicit_points({F13(0)});
  EXPECT_EQ(vanishing_poly(d), Polynomial<F13>::from_values({0, 1}));
  EXPECT_THROW(EvaluationDomain<F13>::explicit_points({F13(1), F13(1)}), DomainError);
}

TEST(DomainTest, SubgroupVanishingMatchesExplicitProduct) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 64; n <<= 1) {
    auto d = D::subgroup(n);
    auto explicit_d = D::explicit_points(d.elements());
    for (int t = 0; t < 20; ++t) {
      auto x = DefaultField::random(rng);
      DefaultField product = DefaultField::one();
      for (auto a : d.elements()) product *= x - a;
      EXPECT_EQ(vanishing_eval(d, x), product);
      EXPECT_EQ(vanishing_eval(explicit_d, x), product);
      EXPECT_EQ(vanishing_poly(d)(x), product);
    }
  }
}

TEST(DomainTest, VanishingEvalUsesLogarithmicWork) {
  auto d = D::subgroup(1 << 16);
  FieldOpScope scope;
  (void)vanishing_eval(d, DefaultField(12345));
  EXPECT_LE(scope.count(), 4u * 17u);
}

TEST(DomainTest, EvaluateDomainMatchesHorner) {
  std::mt19937_64 rng(23);
  for (std::size_t n : {1u, 2u, 8u, 64u}) {
    for (auto d : {D::subgroup(n), D::coset(n, DefaultField::generator())}) {
      // Degree both below and above |D| exercises the folding path.
      for (std::size_t deg : {std::size_t{0}, n / 2, 3 * n}) {
        auto p = random_poly(rng, deg);
        auto vals = evaluate_domain(p, d);
        ASSERT_EQ(vals.size(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(vals[i], p(d.element(i)));
      }
    }
  }
}

TEST(DomainTest, InterpolateDomainRoundTrip) {
  std::mt19937_64 rng(29);
  for (std::size_t n : {1u, 4u, 32u}) {
    auto coset = D::coset(n, DefaultField(7));
    auto p = random_poly(rng, n - 1);
    auto vals = evaluate_domain(p, coset);
    EXPECT_EQ(interpolate_domain<DefaultField>(vals, coset), p);
    // Structured and Lagrange paths agree.
    auto explicit_d = D::explicit_points(coset.elements());
    EXPECT_EQ(interpolate_domain<DefaultField>(vals, explicit_d), p);
  }
}

TEST(DomainTest, CosetMembership) {
  auto sub = D::subgroup(16);
  auto coset = D::coset(16, DefaultField::generator());
  for (auto x : coset.elements()) {
    EXPECT_FALSE(sub.contains(x));
    EXPECT_TRUE(coset.contains(x));
  }
  auto sq = coset.squared();
  EXPECT_EQ(sq.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(sq.element(i), coset.element(i) * coset.element(i));
}

}  // namespace
}  // namespace vck
