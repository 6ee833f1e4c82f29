#include <gtest/gtest.h>

#include <set>

#include "zkprov/accumulators/dataset_tree.h"
#include "zkprov/accumulators/training_accumulator.h"
#include "zkprov/common/random.h"

using namespace zkprov;
using namespace zkprov::accumulators;
using algebra::Fr;

namespace {

std::vector<Bytes> records(size_t n, const std::string& prefix = "r") {
  std::vector<Bytes> out;
  for (size_t i = 0; i < n; ++i) {
    std::string s = prefix + std::to_string(i);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

const KzgParams& params() {
  static const KzgParams p = commitments::kzg_setup(16, as_bytes("accumulator tests"), true);
  return p;
}

Fr fr(uint64_t v) { return Fr::from_u64(v); }

}  // namespace

TEST(DatasetTree, RootsMatchScratchRecomputation) {
  // Roots computed independently in Python from the documented hashing rule.
  EXPECT_EQ(DatasetTree::build(records(4)).root().to_hex(),
            "0f958e22399bd01b50331cf0dc2d2f28f9d96a30ab7ee3992dad813bb9503b5e");
  EXPECT_EQ(DatasetTree::build(records(1)).root().to_hex(),
            "28dd785fa9590217c863aaccb6dc0b5efefcb58d099b543b129555563c1190f9");
  EXPECT_EQ(DatasetTree::build(records(3)).root().to_hex(),
            "1593860157ad622513bf611e84c3f5109feaf85b539bc0d36a93cae563ca35c3");
}

TEST(DatasetTree, SingleLeafIsPaddedPair) {
  auto t = DatasetTree::build(records(1));
  EXPECT_EQ(t.root(), node_hash(t.leaves()[0], t.leaves()[0]));
  EXPECT_EQ(t.levels().size(), 2u);
}

TEST(DatasetTree, OrderSensitiveAndRejectsEmpty) {
  auto r = records(5);
  auto a = DatasetTree::build(r);
  std::swap(r[1], r[3]);
  EXPECT_NE(a.root(), DatasetTree::build(r).root());
  EXPECT_THROW(DatasetTree::build({}), std::invalid_argument);
}

TEST(DatasetTree, BatchUpdateMatchesRebuild) {
  DeterministicRandom rng(1);
  for (size_t n = 1; n <= 64; ++n) {
    auto recs = records(n);
    auto tree = DatasetTree::build(recs);
    EXPECT_EQ(tree.batch_update({}).root(), tree.root());
    std::vector<std::pair<size_t, Bytes>> updates;
    size_t k = 1 + rng.uniform(std::min<size_t>(n, 5));
    for (size_t u = 0; u < k; ++u) {
      size_t idx = rng.uniform(n);
      std::string s = "updated-" + std::to_string(n) + "-" + std::to_string(u);
      updates.emplace_back(idx, Bytes(s.begin(), s.end()));
      recs[idx] = Bytes(s.begin(), s.end());
    }
    EXPECT_EQ(tree.batch_update(updates).root(), DatasetTree::build(recs).root()) << n;
  }
  auto tree = DatasetTree::build(records(4));
  auto recs = records(4);
  recs[2] = Bytes{1};
  recs[3] = Bytes{2};
  EXPECT_EQ(tree.batch_update({{2, Bytes{1}}, {3, Bytes{2}}}).root(), DatasetTree::build(recs).root());
  EXPECT_THROW(tree.batch_update({{4, Bytes{1}}}), std::out_of_range);
}

TEST(DatasetTree, RootsCollisionFreeOverCorpus) {
  std::set<std::string> roots;
  for (int i = 0; i < 10000; ++i) {
    std::string s = "dataset-" + std::to_string(i);
    roots.insert(DatasetTree::build({Bytes(s.begin(), s.end())}).root().to_hex());
  }
  EXPECT_EQ(roots.size(), 10000u);
}

TEST(DatasetTree, CanonicalRecordSortsKeys) {
  EXPECT_EQ(canonicalize_record(R"({"question": "q", "answer":"a",  "context": "c"})"),
            R"({"answer":"a","context":"c","question":"q"})");
  EXPECT_THROW(canonicalize_record("{not json"), std::exception);
}

TEST(Accumulator, CharacteristicPolynomial) {
  auto one = TrainingAccumulator::build(params(), {fr(7)}, KzgBlind::none());
  EXPECT_EQ(one.polynomial(), Polynomial({-fr(7), fr(1)}));
  auto two = TrainingAccumulator::build(params(), {fr(2), fr(3)}, KzgBlind::none());
  EXPECT_EQ(two.polynomial(), Polynomial({fr(6), -fr(5), fr(1)}));
  EXPECT_THROW(TrainingAccumulator::build(params(), {fr(2), fr(2)}, KzgBlind::none()), std::invalid_argument);
}

TEST(Accumulator, WitnessQuotientByHand) {
  DeterministicRandom rng(2);
  auto blind = KzgBlind::random(rng);
  auto acc = TrainingAccumulator::build(params(), {fr(2), fr(3)}, blind);
  auto w = acc.witness(params(), fr(2));
  // Q = X - 3, carrying the blind's linear coefficient.
  EXPECT_EQ(w.w, commitments::kzg_commit(params(), Polynomial({-fr(3), fr(1)}), KzgBlind{blind.r1, Fr::zero()}));
  EXPECT_TRUE(check_membership(params(), acc.commitment(), fr(2), w));
  auto single = TrainingAccumulator::build(params(), {fr(9)}, KzgBlind::none());
  EXPECT_EQ(single.witness(params(), fr(9)).w, G1(algebra::g1_generator()));
}

TEST(Accumulator, CompletenessAndNonMembers) {
  DeterministicRandom rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Fr> roots;
    for (int i = 0; i < 8; ++i) roots.push_back(rng.scalar());
    auto acc = TrainingAccumulator::build(params(), roots, KzgBlind::random(rng));
    for (const auto& r : roots) {
      EXPECT_TRUE(acc.polynomial().evaluate(r).is_zero());
      EXPECT_TRUE(check_membership(params(), acc.commitment(), r, acc.witness(params(), r)));
    }
    auto w = acc.witness(params(), roots[0]);
    EXPECT_FALSE(check_membership(params(), acc.commitment(), roots[1], w));
  }
  auto acc = TrainingAccumulator::build(params(), {fr(1), fr(2), fr(3), fr(4)}, KzgBlind::random(rng));
  for (int i = 0; i < 100; ++i) EXPECT_THROW(acc.witness(params(), rng.scalar()), NotMemberError);
}
