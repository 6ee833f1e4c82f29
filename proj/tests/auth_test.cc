#include <gtest/gtest.h>

#include <filesystem>

#include "zkprov/algebra/hash.h"
#include "zkprov/auth/bls.h"

using namespace zkprov;
using namespace zkprov::auth;

namespace {
Bytes msg(const std::string& s) { return Bytes(s.begin(), s.end()); }
}  // namespace

TEST(Bls, SignVerifyRoundTrip) {
  DeterministicRandom rng(1);
  auto k = KeyPair::generate(rng);
  auto sig = bls_sign(k, msg("hello"));
  EXPECT_TRUE(bls_verify(k.public_key(), msg("hello"), sig));
  EXPECT_FALSE(bls_verify(k.public_key(), msg("hellp"), sig));
  // Deterministic.
  EXPECT_EQ(bls_sign(k, msg("hello")).point, sig.point);
}

TEST(Bls, SignatureIsHashToCurveTimesSecret) {
  DeterministicRandom rng(2);
  auto k = KeyPair::generate(rng);
  auto h = algebra::hash_to_g1(msg("m"), kBlsDomain);
  EXPECT_EQ(bls_sign(k, msg("m")).point, h.mul(k.secret()));
}

TEST(Bls, DifferentKeysDiffer) {
  DeterministicRandom rng(3);
  auto a = KeyPair::generate(rng);
  auto b = KeyPair::generate(rng);
  EXPECT_NE(bls_sign(a, msg("x")).point, bls_sign(b, msg("x")).point);
  for (int i = 0; i < 20; ++i) {
    auto m = msg("trial" + std::to_string(i));
    EXPECT_FALSE(bls_verify(a.public_key(), m, bls_sign(b, m)));
  }
}

TEST(Bls, RandomPointsNeverVerify) {
  DeterministicRandom rng(4);
  auto k = KeyPair::generate(rng);
  for (int i = 0; i < 50; ++i) {
    Signature forged{G1(algebra::g1_generator()).mul(rng.scalar())};
    EXPECT_FALSE(bls_verify(k.public_key(), msg("m" + std::to_string(i)), forged));
  }
  EXPECT_FALSE(bls_verify(k.public_key(), msg("m"), Signature{G1::identity()}));
  Bytes garbage(32, 0xff);
  EXPECT_FALSE(bls_verify_bytes(k.public_key(), msg("m"), garbage));
}

TEST(Bls, AggregateVerify) {
  DeterministicRandom rng(5);
  for (size_t k = 1; k <= 8; ++k) {
    std::vector<KeyPair> keys;
    std::vector<PublicKey> pks;
    std::vector<Bytes> msgs;
    std::vector<Signature> sigs;
    for (size_t i = 0; i < k; ++i) {
      keys.push_back(KeyPair::generate(rng));
      pks.push_back(keys.back().public_key());
      msgs.push_back(msg("agg" + std::to_string(i)));
      sigs.push_back(bls_sign(keys.back(), msgs.back()));
    }
    EXPECT_TRUE(bls_aggregate_verify(pks, msgs, bls_aggregate(sigs)));
    if (k == 1) {
      EXPECT_EQ(bls_aggregate_verify(pks, msgs, sigs[0]), bls_verify(pks[0], msgs[0], sigs[0]));
    }
    size_t bad = rng.uniform(k);
    auto tampered = sigs;
    tampered[bad].point += G1(algebra::g1_generator());
    EXPECT_FALSE(bls_aggregate_verify(pks, msgs, bls_aggregate(tampered)));
  }
  auto kp = KeyPair::generate(rng);
  std::vector<PublicKey> pks{kp.public_key(), kp.public_key()};
  EXPECT_THROW(bls_aggregate_verify(pks, {msg("a"), msg("a")}, Signature{}), std::invalid_argument);
  EXPECT_THROW(bls_aggregate_verify(pks, {msg("a")}, Signature{}), std::invalid_argument);
}

TEST(Bls, KeyFiles) {
  DeterministicRandom rng(6);
  auto k = KeyPair::generate(rng);
  auto dir = std::filesystem::temp_directory_path() / "zkprov_auth_test";
  std::filesystem::create_directories(dir);
  k.save(dir / "ca.key");
  save_public_key(k.public_key(), dir / "ca.pub");
  auto status = std::filesystem::status(dir / "ca.key");
  EXPECT_EQ(status.permissions() & std::filesystem::perms::group_read, std::filesystem::perms::none);
  auto loaded = KeyPair::load(dir / "ca.key");
  EXPECT_EQ(loaded.secret(), k.secret());
  EXPECT_EQ(load_public_key(dir / "ca.pub"), k.public_key());
  EXPECT_THROW(load_public_key(dir / "ca.key"), DecodeError);
  EXPECT_EQ(k.public_key().fingerprint().size(), 16u);
  std::filesystem::remove_all(dir);
}
