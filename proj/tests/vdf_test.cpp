#include <random>
#include <set>

#include "gtest/gtest.h"

#include "vck/vdf.hpp"

namespace vck::vdf {
namespace {

VdfParams toy(std::uint64_t t) { return VdfParams{35, t, kDefaultLambda}; }

BigUint random_unit(std::mt19937_64& rng, const BigUint& n) {
  for (;;) {
    BigUint x = BigUint(rng()) % n;
    if (x > 1 && boost::multiprecision::gcd(x, n) == 1) return x;
  }
}

// Plain integer oracle for x^(2^t) mod n.
BigUint oracle_pow2(const BigUint& x, std::uint64_t t, const BigUint& n) {
  BigUint e = BigUint(1) << t;
  return normalize_pm(mod_pow(x, e, n), n);
}

TEST(VdfTest, SetupIsDeterministicWithDistinctPrimes) {
  auto [p1, k1] = setup(16, to_bytes("seed"));
  auto [p2, k2] = setup(16, to_bytes("seed"));
  EXPECT_EQ(p1.n, p2.n);
  EXPECT_EQ(k1, k2);
  for (int i = 0; i < 50; ++i) {
    auto [p, k] = setup(8, to_bytes("s" + std::to_string(i)));
    EXPECT_NE(k.p, k.q);
    EXPECT_EQ(k.p * k.q, p.n);
    EXPECT_EQ(bit_length(k.p), 8u);
  }
}

TEST(VdfTest, EulerOracleOnSmallModulus) {
  std::mt19937_64 rng(1);
  auto [params, key] = setup(8, to_bytes("euler"));
  for (int i = 0; i < 100; ++i) {
    BigUint x = random_unit(rng, params.n);
    EXPECT_EQ(mod_pow(x, key.phi, params.n), 1);
  }
}

TEST(VdfTest, ToyEvaluation) {
  OpCounter ops;
  EXPECT_EQ(eval_sequential(toy(3), 2, &ops), 11);
  EXPECT_EQ(ops.squarings, 3u);
  EXPECT_EQ(eval_sequential(toy(0), 2), 2);
  EXPECT_EQ(eval_sequential(toy(17), 1), 1);
  TrapdoorKey key{5, 7, 24};
  EXPECT_EQ(eval_trapdoor(key, toy(3), 2), 11);
  EXPECT_EQ(eval_trapdoor(key, toy(17), 1), 1);
  EXPECT_THROW(eval_sequential(toy(3), 5), UsageError);
  EXPECT_THROW(eval_trapdoor(TrapdoorKey{3, 11, 20}, toy(3), 2), UsageError);
}

TEST(VdfTest, ToyProofAndVerification) {
  EXPECT_EQ(prove(toy(3), 2, 5), 2);
  EXPECT_EQ(prove(toy(3), 2, 11), 1);
  EXPECT_THROW(prove(toy(3), 2, 9), UsageError);
  EXPECT_EQ(mod_pow(2, 3, 5), 3);
  EXPECT_EQ(verify_with_challenge(toy(3), 2, 11, 2, 5), VerifyStatus::kAccepted);
  EXPECT_EQ(verify_with_challenge(toy(3), 2, 12, 2, 5), VerifyStatus::kEquationFailed);
  // Quotient-group representatives.
  EXPECT_EQ(verify_with_challenge(toy(3), 2, 35 - 11, 2, 5), VerifyStatus::kAccepted);
  EXPECT_EQ(verify_with_challenge(toy(3), 2, 11, 35 - 2, 5), VerifyStatus::kAccepted);
}

TEST(VdfTest, SequentialAndTrapdoorAgree) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    auto [params, key] = setup(16, to_bytes("agree" + std::to_string(i % 20)));
    params.t = rng() % 1025;
    BigUint x = random_unit(rng, params.n);
    BigUint y = eval_sequential(params, x);
    ASSERT_EQ(y, eval_trapdoor(key, params, x));
    if (i < 100) {
      ASSERT_EQ(y, oracle_pow2(x, static_cast<std::uint64_t>(params.t), params.n));
    }
  }
}

TEST(VdfTest, HugeTWithTrapdoor) {
  auto [params, key] = setup(32, to_bytes("huge"));
  params.t = BigUint(1) << 64;
  BigUint y = eval_trapdoor(key, params, 5);
  EXPECT_GT(y, 0);
  EXPECT_LE(y, params.n / 2);
}

TEST(VdfTest, ProveMatchesTrapdoorExponent) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto [params, key] = setup(16, to_bytes("pt" + std::to_string(i)));
    params.t = 1 + rng() % 300;
    BigUint x = random_unit(rng, params.n);
    Transcript tr("test");
    tr.absorb_u64("i", static_cast<std::uint64_t>(i));
    BigUint r = challenge_prime(tr, 16);
    ASSERT_EQ(prove(params, x, r), prove_trapdoor(key, params, x, r));
  }
}

TEST(VdfTest, ProverCostAtMostTwoT) {
  auto [params, key] = setup(32, to_bytes("cost"));
  params.t = 4096;
  OpCounter ops;
  prove(params, 7, 1000003, &ops);
  EXPECT_LE(ops.total(), 2 * 4096u);
}

TEST(VdfTest, EndToEndAndTamper) {
  std::mt19937_64 rng(4);
  auto [params, key] = setup(64, to_bytes("e2e"));
  params.t = 2000;
  BigUint x = random_unit(rng, params.n);
  VdfProof proof = evaluate_and_prove(params, x);
  EXPECT_EQ(verify(params, x, proof), VerifyStatus::kAccepted);
  EXPECT_EQ(bit_length(proof.r), params.challenge_bits());

  VdfProof bad_y = proof;
  bad_y.y = normalize_pm(proof.y + 1, params.n);
  EXPECT_NE(verify(params, x, bad_y), VerifyStatus::kAccepted);

  VdfProof bad_r = proof;
  Transcript other("other");
  bad_r.r = challenge_prime(other, params.challenge_bits());
  EXPECT_EQ(verify(params, x, bad_r), VerifyStatus::kChallengeMismatch);

  // Quotient-group invariance of the full verifier.
  VdfProof flipped = proof;
  flipped.y = params.n - proof.y;
  flipped.pi = params.n - proof.pi;
  EXPECT_EQ(verify(params, x, flipped), VerifyStatus::kAccepted);
}

TEST(VdfTest, RandomPiTampersRejected) {
  std::mt19937_64 rng(5);
  auto [params, key] = setup(32, to_bytes("tamper"));
  params.t = 64;
  BigUint x = 3;
  VdfProof proof = evaluate_and_prove(params, x);
  int accepted = 0;
  for (int i = 0; i < 100000; ++i) {
    VdfProof t = proof;
    t.pi = random_unit(rng, params.n);
    if (normalize_pm(t.pi, params.n) == proof.pi) continue;
    if (verify_with_challenge(params, x, t.y, t.pi, t.r) == VerifyStatus::kAccepted) ++accepted;
  }
  EXPECT_EQ(accepted, 0);
}

TEST(VdfTest, VerifierCostBoundAndAsymmetry) {
  auto [params, key] = setup(64, to_bytes("asym"));
  params.t = 1 << 16;
  OpCounter prover, verifier;
  VdfProof proof = evaluate_and_prove(params, 2, &prover);
  ASSERT_EQ(verify(params, 2, proof, &verifier), VerifyStatus::kAccepted);
  const BigUint residue = mod_pow(2, params.t, proof.r);
  EXPECT_LE(verifier.total(), 2 * (bit_length(proof.r) + bit_length(residue)) + 8);
  EXPECT_GE(prover.squarings / verifier.total(), 256u);
}

TEST(VdfTest, BeaconRounds) {
  auto [params, key] = setup(32, to_bytes("beacon"));
  params.t = 256;
  std::set<BigUint> outputs;
  for (int i = 0; i < 100; ++i) {
    Bytes input = to_bytes("block-" + std::to_string(i));
    VdfProof proof = vdf_round(params, input);
    ASSERT_EQ(verify(params, hash_to_group(input, params.n), proof), VerifyStatus::kAccepted);
    outputs.insert(proof.y);
  }
  EXPECT_EQ(outputs.size(), 100u);
  EXPECT_EQ(vdf_round(params, to_bytes("x")), vdf_round(params, to_bytes("x")));
}

TEST(VdfTest, Serialization) {
  auto [params, key] = setup(16, to_bytes("ser"), 77);
  ByteWriter w;
  params.write(w);
  key.write(w);
  VdfProof proof = evaluate_and_prove(params, 2);
  write_proof(w, params, 2, proof);
  ByteReader r(w.bytes());
  EXPECT_EQ(VdfParams::read(r), params);
  EXPECT_EQ(TrapdoorKey::read(r), key);
  auto f = read_proof(r);
  r.expect_done();
  EXPECT_EQ(f.proof, proof);
  EXPECT_EQ(f.n, params.n);
  EXPECT_EQ(f.t, 77);
}

}  // namespace
}  // namespace vck::vdf
