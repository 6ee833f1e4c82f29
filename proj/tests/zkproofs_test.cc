#include <gtest/gtest.h>

#include <algorithm>

#include "fixture.h"
#include "zkprov/algebra/msm.h"

using namespace zkprov;
using namespace zkprov::zkproofs;
using zkprov::testing::make_world;
using zkprov::testing::random_diffs;
using zkprov::testing::World;
using zkprov::testing::WorldConfig;

namespace {

World& small_world() {
  static World w = make_world(WorldConfig{}, random_diffs(2, 4, 3));
  return w;
}

const MetadataOpening& opening(const World& w, size_t i) { return w.ws.datasets.at(i).meta; }
const DatasetPublic& pub(const World& w, size_t i) { return w.cs.statement().datasets.at(i); }

}  // namespace

TEST(Transcript, DeterministicAndOrderSensitive) {
  Transcript a("t"), b("t"), c("t");
  a.absorb("x", "1");
  a.absorb("y", "2");
  b.absorb("x", "1");
  b.absorb("y", "2");
  c.absorb("y", "2");
  c.absorb("x", "1");
  Fr ca = a.challenge("c");
  EXPECT_EQ(ca, b.challenge("c"));
  EXPECT_NE(ca, c.challenge("c"));
  // Consecutive challenges differ; label and domain matter.
  EXPECT_NE(a.challenge("c"), ca);
  Transcript d("u");
  d.absorb("x", "1");
  d.absorb("y", "2");
  EXPECT_NE(d.challenge("c"), ca);
  // Boundaries between label and data are unambiguous.
  Transcript e("t"), f("t");
  e.absorb("ab", "c");
  f.absorb("a", "bc");
  EXPECT_NE(e.challenge("c"), f.challenge("c"));
}

TEST(Transcript, ForksAreIndependent) {
  Transcript root("t");
  root.absorb("seed", Fr::from_u64(5));
  auto f1 = root.fork("one");
  auto f2 = root.fork("two");
  EXPECT_NE(f1.challenge("c"), f2.challenge("c"));
  EXPECT_EQ(root.fork("one").challenge("c"), root.fork("one").challenge("c"));
  Transcript other("t");
  other.absorb("seed", Fr::from_u64(6));
  EXPECT_NE(other.fork("one").challenge("c"), root.fork("one").challenge("c"));
}

TEST(SignatureProof, HonestAccepts) {
  auto& w = small_world();
  DeterministicRandom rng(10);
  auto p = prove_signature(*w.srs, w.ca.public_key(), pub(w, 0).meta, opening(w, 0), w.ws.datasets[0].sigma,
                           Transcript("s"), rng);
  EXPECT_TRUE(verify_signature(*w.srs, w.ca.public_key(), pub(w, 0), p, Transcript("s")));
  EXPECT_FALSE(verify_signature(*w.srs, w.ca.public_key(), pub(w, 0), p, Transcript("other")));
}

TEST(SignatureProof, WrongCaKeyRejects) {
  auto& w = small_world();
  DeterministicRandom rng(11);
  auto rogue = auth::KeyPair::generate(rng);
  auto p = prove_signature(*w.srs, w.ca.public_key(), pub(w, 0).meta, opening(w, 0), w.ws.datasets[0].sigma,
                           Transcript("s"), rng);
  EXPECT_FALSE(verify_signature(*w.srs, rogue.public_key(), pub(w, 0), p, Transcript("s")));
  // A signature made by the rogue key is refused by the prover under the real key.
  auto forged = auth::bls_sign(rogue, pub(w, 0).meta.signing_bytes());
  EXPECT_THROW(prove_signature(*w.srs, w.ca.public_key(), pub(w, 0).meta, opening(w, 0), forged, Transcript("s"), rng),
               ProofAbort);
}

TEST(SignatureProof, ReplayAgainstOtherCommitmentRejects) {
  auto& w = small_world();
  DeterministicRandom rng(12);
  for (int t = 0; t < 100; ++t) {
    size_t i = t % 4, j = (i + 1 + t / 4 % 3) % 4;
    auto p = prove_signature(*w.srs, w.ca.public_key(), pub(w, i).meta, opening(w, i), w.ws.datasets[i].sigma,
                             Transcript("s"), rng);
    // Same signature, other dataset's commitments.
    DatasetPublic swapped = pub(w, j);
    swapped.c_sigma = pub(w, i).c_sigma;
    EXPECT_FALSE(verify_signature(*w.srs, w.ca.public_key(), swapped, p, Transcript("s")));
    // Other dataset's signature too: the opening proof no longer matches.
    auto p2 = p;
    p2.sigma = w.ws.datasets[j].sigma;
    EXPECT_FALSE(verify_signature(*w.srs, w.ca.public_key(), pub(w, j), p2, Transcript("s")));
  }
}

TEST(MembershipProof, MemberAcceptsAndLinksToCommitment) {
  auto& w = small_world();
  DeterministicRandom rng(13);
  const auto& st = w.cs.statement();
  for (size_t i = 0; i < 4; ++i) {
    auto p = prove_membership(*w.srs, *w.ws.accumulator, pub(w, i).meta.c_rho, opening(w, i).rho,
                              opening(w, i).rho_blind, Transcript("m"), rng);
    EXPECT_TRUE(verify_membership(*w.srs, st.r_tr, pub(w, i).meta.c_rho, p, Transcript("m")));
    // Mismatched commitment: same scalar not behind the other C_rho.
    EXPECT_FALSE(verify_membership(*w.srs, st.r_tr, pub(w, (i + 1) % 4).meta.c_rho, p, Transcript("m")));
  }
}

TEST(MembershipProof, NonMemberAbortsAndForgeriesFail) {
  auto cfg = WorldConfig{};
  cfg.selection = {0, 2};
  auto w = make_world(cfg, random_diffs(1, 2, 4));
  DeterministicRandom rng(14);
  EXPECT_THROW(prove_membership(*w.srs, *w.ws.accumulator, pub(w, 1).meta.c_rho, opening(w, 1).rho,
                                opening(w, 1).rho_blind, Transcript("m"), rng),
               ProofAbort);
  // Forger: random W with an honest-looking sigma proof over the relation it
  // can actually satisfy (knowing rho and picking epsilon freely).
  for (int t = 0; t < 100; ++t) {
    MembershipProof forged;
    forged.w = G1(algebra::g1_generator()).mul(rng.scalar());
    forged.e = rng.scalar();
    forged.s_rho = rng.scalar();
    forged.s_epsilon = rng.scalar();
    forged.s_rho_blind = rng.scalar();
    EXPECT_FALSE(verify_membership(*w.srs, w.cs.statement().r_tr, pub(w, 1).meta.c_rho, forged, Transcript("m")));
  }
}

TEST(SlotProof, HonestAndWrongAccumulator) {
  auto& w = small_world();
  DeterministicRandom rng(15);
  const auto& st = w.cs.statement();
  Fr held = slot_value(st.r_tr);
  auto p = prove_slot(st.r_tr, st.slot_commitment, held, w.ws.slot_blind, Transcript("b"), rng);
  EXPECT_TRUE(verify_slot(st.r_tr, st.slot_commitment, p, Transcript("b")));
  G1 other_root = st.r_tr + G1(algebra::g1_generator());
  EXPECT_FALSE(verify_slot(other_root, st.slot_commitment, p, Transcript("b")));
  EXPECT_THROW(prove_slot(other_root, st.slot_commitment, slot_value(other_root), w.ws.slot_blind, Transcript("b"), rng),
               ProofAbort);
}

TEST(SlotProof, TamperedSlotRejects) {
  auto& w = small_world();
  DeterministicRandom rng(16);
  const auto& st = w.cs.statement();
  G1 h(blinding_base()), g(slot_base());
  for (int t = 0; t < 100; ++t) {
    // Slot built over a tampered value; the prover runs the honest Schnorr
    // steps with the blind it knows.
    Fr d = slot_value(st.r_tr) + Fr::from_u64(1 + rng.uniform(1000));
    Fr blind = rng.scalar();
    G1 c_slot = g.mul(d) + h.mul(blind);
    Fr k = rng.scalar();
    Transcript tr("b");
    tr.absorb("R_tr", st.r_tr);
    tr.absorb("C_T", c_slot);
    tr.absorb("T", h.mul(k));
    Fr e = tr.challenge("e");
    SlotProof p{e, k + e * blind};
    EXPECT_FALSE(verify_slot(st.r_tr, c_slot, p, Transcript("b")));
  }
}

namespace {

struct FoldCase {
  weights::WeightDiffSet w;
  std::vector<Fr> blinds;
  std::vector<G1> commits;
  std::vector<std::vector<Fr>> v;
  std::vector<Fr> b;
};

FoldCase fold_case(size_t n, size_t len, uint64_t seed) {
  DeterministicRandom rng(seed);
  FoldCase f{random_diffs(n, len, seed), {}, {}, {}, {}};
  auto key = weight_key(len);
  for (size_t j = 0; j < n; ++j) {
    f.blinds.push_back(rng.scalar());
    f.commits.push_back(commitments::pedersen_commit_small(*key, f.w.chunk(j), f.blinds.back()));
  }
  f.v = challenge_vectors(Fr::from_u64(seed), n, len);
  f.b = weights::compute_binding_values(f.w, f.v).b;
  return f;
}

}  // namespace

TEST(BindingValueProof, SingleLayerIsPlainClaim) {
  auto f = fold_case(1, 8, 20);
  G1 c_b = commit_binding_values(f.b, Fr::from_u64(3));
  Transcript t("f");
  auto c = fold_challenges(f.commits, c_b, 8, t);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], Fr::one());
  auto folded = fold_claims(c, f.b);
  EXPECT_EQ(folded.value, f.b[0]);
  EXPECT_EQ(fold_vectors(c, f.v), f.v[0]);
}

TEST(BindingValueProof, TwoLayerHandFold) {
  // dW_1 = (1, 2), dW_2 = (3, -1)
  auto w = weights::make_custom_diffs(2, {1, 2, 3, -1});
  std::vector<std::vector<Fr>> v = {{Fr::from_u64(3), Fr::from_u64(4)}, {Fr::from_u64(5), Fr::from_u64(7)}};
  auto b = weights::compute_binding_values(w, v).b;
  EXPECT_EQ(b[0], Fr::from_u64(11));
  EXPECT_EQ(b[1], Fr::from_u64(8));
  std::vector<Fr> c = {Fr::one(), Fr::from_u64(10)};
  // B* = 11 + 10 * 8 = 91, and <(1,2,3,-1), (3,4,50,70)> = 3 + 8 + 150 - 70 = 91.
  EXPECT_EQ(fold_claims(c, b).value, Fr::from_u64(91));
  auto u = fold_vectors(c, v);
  EXPECT_EQ(u[2], Fr::from_u64(50));
  EXPECT_EQ(weights::inner_product(w.padded(), u), Fr::from_u64(91));

  DeterministicRandom rng(21);
  auto key = weight_key(2);
  std::vector<Fr> blinds = {rng.scalar(), rng.scalar()};
  std::vector<G1> commits = {commitments::pedersen_commit_small(*key, w.chunk(0), blinds[0]),
                             commitments::pedersen_commit_small(*key, w.chunk(1), blinds[1])};
  Fr b_blind = rng.scalar();
  G1 c_b = commit_binding_values(b, b_blind);
  auto p = prove_binding_values(w, blinds, commits, v, b, b_blind, c_b, Transcript("f"), rng);
  EXPECT_TRUE(verify_binding_values(commits, 2, v, c_b, p, Transcript("f")));
  // Verifier's recomputed aggregate over the responses matches the fold.
  Transcript t("f");
  EXPECT_EQ(fold_challenges(commits, c_b, 2, t), p.fold_challenges);
}

TEST(BindingValueProof, NaiveFoldOracle) {
  for (size_t n : {1u, 2u, 8u}) {
    for (size_t len : {2u, 16u}) {
      auto f = fold_case(n, len, 100 + n * 31 + len);
      DeterministicRandom rng(n * 7 + len);
      Fr b_blind = rng.scalar();
      G1 c_b = commit_binding_values(f.b, b_blind);
      Transcript t("f");
      auto c = fold_challenges(f.commits, c_b, len, t);
      // Naive pairwise fold: S_1 = B_1, S_j = S_{j-1} + c_j B_j, same for the
      // linear form over the concatenated chunks.
      Fr s = f.b[0];
      Fr lin = weights::inner_product(f.w.chunk(0), f.v[0]);
      for (size_t j = 1; j < n; ++j) {
        s = s + c[j] * f.b[j];
        lin = lin + c[j] * weights::inner_product(f.w.chunk(j), f.v[j]);
      }
      auto folded = fold_claims(c, f.b);
      EXPECT_EQ(folded.value, s);
      EXPECT_EQ(weights::inner_product(f.w.padded(), fold_vectors(c, f.v)), lin);
      EXPECT_EQ(lin, s);
      auto p = prove_binding_values(f.w, f.blinds, f.commits, f.v, f.b, b_blind, c_b, Transcript("f"), rng);
      EXPECT_EQ(p.fold_challenges, c);
      EXPECT_TRUE(verify_binding_values(f.commits, len, f.v, c_b, p, Transcript("f"))) << n << " " << len;
    }
  }
}

TEST(BindingValueProof, CorruptedValueRejects) {
  auto f = fold_case(8, 16, 30);
  DeterministicRandom rng(31);
  for (int t = 0; t < 100; ++t) {
    auto b = f.b;
    b[rng.uniform(b.size())] += Fr::from_u64(1 + rng.uniform(1000));
    Fr b_blind = rng.scalar();
    G1 c_b = commit_binding_values(b, b_blind);
    // A fresh transcript label per trial gives a new challenge sequence.
    std::string label = "f" + std::to_string(t);
    auto p = prove_binding_values(f.w, f.blinds, f.commits, f.v, b, b_blind, c_b, Transcript(label), rng);
    EXPECT_FALSE(verify_binding_values(f.commits, 16, f.v, c_b, p, Transcript(label)));
  }
}

TEST(BindingValueProof, TamperedWeightsReject) {
  auto f = fold_case(4, 16, 40);
  DeterministicRandom rng(41);
  for (int t = 0; t < 100; ++t) {
    size_t idx = rng.uniform(f.w.padded().size());
    auto tampered = f.w.with_element(idx, f.w.padded()[idx] + 1 + static_cast<int64_t>(rng.uniform(50)));
    auto b = weights::compute_binding_values(tampered, f.v).b;
    Fr b_blind = rng.scalar();
    G1 c_b = commit_binding_values(b, b_blind);
    auto p = prove_binding_values(tampered, f.blinds, f.commits, f.v, b, b_blind, c_b, Transcript("f"), rng);
    EXPECT_FALSE(verify_binding_values(f.commits, 16, f.v, c_b, p, Transcript("f")));
  }
}

TEST(BindingValueProof, WrongChallengesReject) {
  auto f = fold_case(2, 16, 50);
  DeterministicRandom rng(51);
  Fr b_blind = rng.scalar();
  G1 c_b = commit_binding_values(f.b, b_blind);
  auto p = prove_binding_values(f.w, f.blinds, f.commits, f.v, f.b, b_blind, c_b, Transcript("f"), rng);
  auto other_v = challenge_vectors(Fr::from_u64(999), 2, 16);
  EXPECT_FALSE(verify_binding_values(f.commits, 16, other_v, c_b, p, Transcript("f")));
  auto bad = p;
  bad.fold_challenges[1] += Fr::one();
  EXPECT_FALSE(verify_binding_values(f.commits, 16, f.v, c_b, bad, Transcript("f")));
  bad = p;
  bad.z_blind[0] += Fr::one();
  EXPECT_FALSE(verify_binding_values(f.commits, 16, f.v, c_b, bad, Transcript("f")));
}

namespace {

struct AttrFixture {
  std::shared_ptr<commitments::KzgParams> srs =
      std::make_shared<commitments::KzgParams>(commitments::kzg_setup(16, as_bytes("attr"), false));
};

const AttrFixture& attr_fixture() {
  static AttrFixture f;
  return f;
}

}  // namespace

TEST(AttributeProof, EmptyQueryAndSubset) {
  const auto& params = *attr_fixture().srs;
  DeterministicRandom rng(60);
  auto m = MetadataOpening::create(Fr::from_u64(1), "x", {"a", "b"}, rng);
  EXPECT_EQ(m.a.degree(), 3);
  G1 c_a = commitments::kzg_commit(params, m.a, m.a_blind);
  auto p0 = prove_attribute_match(params, c_a, m.a, m.a_blind, {}, Transcript("a"), rng);
  EXPECT_TRUE(verify_attribute_match(params, c_a, {}, p0, Transcript("a")));
  auto p1 = prove_attribute_match(params, c_a, m.a, m.a_blind, {"a"}, Transcript("a"), rng);
  EXPECT_TRUE(verify_attribute_match(params, c_a, {"a"}, p1, Transcript("a")));
  EXPECT_FALSE(verify_attribute_match(params, c_a, {"b"}, p1, Transcript("a")));
  // Division oracle: {a,b,salt} / {a} leaves the monic (X - b)(X - salt).
  auto q = m.a.divide(query_polynomial({"a"}));
  EXPECT_TRUE(q.remainder.is_zero());
  Fr roots[] = {attribute_root("b"), salt_root(m.salt)};
  EXPECT_EQ(q.quotient, Polynomial::from_roots(roots));
}

TEST(AttributeProof, NonSubsetAbortsAndForgeriesFail) {
  const auto& params = *attr_fixture().srs;
  DeterministicRandom rng(61);
  auto m = MetadataOpening::create(Fr::from_u64(1), "x", {"a", "b"}, rng);
  G1 c_a = commitments::kzg_commit(params, m.a, m.a_blind);
  EXPECT_THROW(prove_attribute_match(params, c_a, m.a, m.a_blind, {"c"}, Transcript("a"), rng), ProofAbort);
  for (int t = 0; t < 100; ++t) {
    // Forger commits to the truncated quotient of A by P_p and opens honestly.
    auto q = m.a.divide(query_polynomial({"c"})).quotient;
    auto q_blind = commitments::KzgBlind::random(rng);
    AttributeProof p;
    p.c_q = commitments::kzg_commit(params, q, q_blind);
    Transcript tr("a");
    tr.absorb("C_A", c_a);
    tr.absorb_u64("attributes", 1);
    tr.absorb("attribute", "c");
    tr.absorb("C_Q", p.c_q);
    Fr z = tr.challenge("z");
    Fr pz = query_polynomial({"c"}).evaluate(z);
    auto r = m.a - Polynomial::constant(pz) * q;
    commitments::KzgBlind rb{m.a_blind.r0 - pz * q_blind.r0, m.a_blind.r1 - pz * q_blind.r1};
    auto open = commitments::kzg_open(params, r, rb, z);
    p.w = open.proof;
    p.blind_eval = open.blind_eval;
    EXPECT_FALSE(verify_attribute_match(params, c_a, {"c"}, p, Transcript("a")));
    // Random C_Q with random opening data.
    AttributeProof junk{G1(algebra::g1_generator()).mul(rng.scalar()), G1(algebra::g1_generator()).mul(rng.scalar()),
                        rng.scalar()};
    EXPECT_FALSE(verify_attribute_match(params, c_a, {"c"}, junk, Transcript("a")));
  }
}

TEST(AttributeProof, SubsetOracle) {
  const auto& params = *attr_fixture().srs;
  DeterministicRandom rng(62);
  const std::vector<std::string> universe = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};
  for (int t = 0; t < 100; ++t) {
    std::set<std::string> att_i, att_p;
    size_t ni = 1 + rng.uniform(8), np = rng.uniform(9);
    while (att_i.size() < ni) att_i.insert(universe[rng.uniform(universe.size())]);
    while (att_p.size() < np) att_p.insert(universe[rng.uniform(universe.size())]);
    bool subset = std::includes(att_i.begin(), att_i.end(), att_p.begin(), att_p.end());
    auto m = MetadataOpening::create(Fr::from_u64(t), "x", att_i, rng);
    G1 c_a = commitments::kzg_commit(params, m.a, m.a_blind);
    bool provable = false;
    try {
      auto p = prove_attribute_match(params, c_a, m.a, m.a_blind, att_p, Transcript("a"), rng);
      provable = verify_attribute_match(params, c_a, att_p, p, Transcript("a"));
    } catch (const ProofAbort&) {
    }
    EXPECT_EQ(provable, subset) << t;
  }
}

// ---- Full bundles ----

namespace {

struct Query {
  std::set<std::string> att;
  std::string prompt;
  std::string response;
};

Query honest_query() {
  std::string prompt = "Is drug X effective for condition Y?";
  return {{"domain=biomedical"}, prompt, weights::generate_response(prompt)};
}

ProofBundle prove_world(const World& w, const Query& q, uint64_t seed, uint32_t index = 0) {
  DeterministicRandom rng(seed);
  ProverWitness pw;
  pw.meta = w.ws.datasets[index].meta;
  pw.sigma = w.ws.datasets[index].sigma;
  pw.accumulator = w.ws.accumulator.get();
  pw.diffs = w.ws.diffs.get();
  pw.chunk_blinds = w.ws.chunk_blinds;
  pw.slot_held = slot_value(w.cs.statement().r_tr);
  pw.slot_blind = w.ws.slot_blind;
  return prove_bundle(w.cs.statement(), index, pw, q.att, q.prompt, q.response, rng);
}

}  // namespace

TEST(Bundle, CompletenessOverConfigs) {
  DeterministicRandom rng(70);
  for (size_t m = 1; m <= 4; ++m) {
    for (size_t n : {1u, 2u, 8u}) {
      for (size_t len : {2u, 16u, 1024u}) {
        if (len == 1024 && n == 8 && m != 4) continue;  // keep the run short; m=4 covers it
        WorldConfig cfg;
        cfg.datasets = m;
        cfg.selection.clear();
        for (uint32_t i = 0; i < m; ++i) cfg.selection.push_back(i);
        cfg.seed = m * 100 + n * 10 + len;
        auto w = make_world(cfg, random_diffs(n, len, cfg.seed));
        auto q = honest_query();
        uint32_t idx = static_cast<uint32_t>(rng.uniform(m));
        q.att.insert("topic=t" + std::to_string(idx));
        auto pi = prove_world(w, q, cfg.seed, idx);
        auto v = verify_bundle(w.cs.statement(), q.att, q.prompt, q.response, pi);
        EXPECT_TRUE(v.accepted()) << m << " " << n << " " << len << " " << v.describe();
      }
    }
  }
}

TEST(Bundle, SerializationRoundTrip) {
  auto& w = small_world();
  auto q = honest_query();
  auto pi = prove_world(w, q, 71);
  auto bytes = pi.serialize();
  auto back = ProofBundle::deserialize(bytes);
  EXPECT_EQ(back.serialize(), bytes);
  EXPECT_TRUE(verify_bundle_bytes(w.cs.statement(), q.att, q.prompt, q.response, bytes).accepted());
  auto flipped = bytes;
  flipped[20] ^= 1;
  EXPECT_EQ(verify_bundle_bytes(w.cs.statement(), q.att, q.prompt, q.response, flipped).primary(), Reason::kMalformed);
}

TEST(Bundle, ReplayWithOtherResponseFailsBindingValues) {
  auto& w = small_world();
  auto q = honest_query();
  auto pi = prove_world(w, q, 72);
  auto v = verify_bundle(w.cs.statement(), q.att, q.prompt, q.response + ".", pi);
  EXPECT_FALSE(v.accepted());
  EXPECT_EQ(v.primary(), Reason::kBindingValues);
  EXPECT_TRUE(v.has(Reason::kBindingValues));
}

TEST(Bundle, EachReasonReachableByTargetedTamper) {
  auto& w = small_world();
  auto q = honest_query();
  auto pi = prove_world(w, q, 73);
  const auto& st = w.cs.statement();
  auto check = [&](const ProofBundle& b, Reason expect) {
    auto v = verify_bundle(st, q.att, q.prompt, q.response, b);
    EXPECT_FALSE(v.accepted());
    EXPECT_EQ(v.failed, 1u << static_cast<unsigned>(expect)) << v.describe();
  };
  auto b = pi;
  b.sigma.s_id += Fr::one();
  check(b, Reason::kSignature);
  b = pi;
  b.tr.s_epsilon += Fr::one();
  check(b, Reason::kMembership);
  b = pi;
  b.bind.s += Fr::one();
  check(b, Reason::kBinding);
  b = pi;
  b.b_rec.z[1] += Fr::one();
  check(b, Reason::kBindingValues);
  b = pi;
  b.match.blind_eval += Fr::one();
  check(b, Reason::kAttributes);
  b = pi;
  b.b_rec.z.pop_back();
  check(b, Reason::kMalformed);
}

TEST(Bundle, ForgedAttributeMatchFailsAttributes) {
  // Prover answers a query whose attributes are a strict superset of the
  // dataset's, forging pi_match with the truncated quotient.
  auto& w = small_world();
  auto q = honest_query();
  q.att = {"domain=biomedical", "lang=en", "topic=t0", "year=2024"};
  DeterministicRandom rng(74);
  const auto& st = w.cs.statement();
  const auto& m = w.ws.datasets[0].meta;
  ProverWitness pw;
  pw.meta = m;
  // Pretend the dataset polynomial includes the extra attribute so the honest
  // prover code runs; C_A is still the real commitment.
  pw.meta.a = m.a * query_polynomial({"year=2024"});
  pw.sigma = w.ws.datasets[0].sigma;
  pw.accumulator = w.ws.accumulator.get();
  pw.diffs = w.ws.diffs.get();
  pw.chunk_blinds = w.ws.chunk_blinds;
  pw.slot_held = slot_value(st.r_tr);
  pw.slot_blind = w.ws.slot_blind;
  // The signature proof's opening must still use the real polynomial.
  Fr seed = weights::derive_seed(st.seed_inputs(0, q.att, q.prompt, q.response));
  auto root = bundle_transcript(seed, 0);
  auto pi = prove_world(w, honest_query(), 75);
  pi.match = prove_attribute_match(*st.srs, st.datasets[0].meta.c_a, pw.meta.a, m.a_blind, q.att, root.fork("match"), rng);
  auto v = verify_bundle(st, q.att, q.prompt, q.response, pi);
  EXPECT_FALSE(v.accepted());
  EXPECT_TRUE(v.has(Reason::kAttributes));
}

TEST(Bundle, PerturbedQueriesReject) {
  auto& w = small_world();
  auto q = honest_query();
  auto pi = prove_world(w, q, 76);
  DeterministicRandom rng(77);
  for (int t = 0; t < 100; ++t) {
    auto p = q;
    switch (t % 3) {
      case 0: p.prompt[rng.uniform(p.prompt.size())] ^= static_cast<char>(1 + rng.uniform(255)); break;
      case 1: p.response[rng.uniform(p.response.size())] ^= static_cast<char>(1 + rng.uniform(255)); break;
      default: p.att.insert("extra=" + std::to_string(t)); break;
    }
    EXPECT_FALSE(verify_bundle(w.cs.statement(), p.att, p.prompt, p.response, pi).accepted()) << t;
  }
}

TEST(Bundle, IndependentBlindsSameStatement) {
  auto& w = small_world();
  auto q = honest_query();
  auto a = prove_world(w, q, 78);
  auto b = prove_world(w, q, 79);
  EXPECT_NE(a.serialize(), b.serialize());
  EXPECT_EQ(prove_world(w, q, 78).serialize(), a.serialize());
  EXPECT_TRUE(verify_bundle(w.cs.statement(), q.att, q.prompt, q.response, a).accepted());
  EXPECT_TRUE(verify_bundle(w.cs.statement(), q.att, q.prompt, q.response, b).accepted());
}
