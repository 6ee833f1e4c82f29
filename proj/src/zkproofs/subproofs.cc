#include "zkprov/zkproofs/subproofs.h"

#include "zkprov/algebra/msm.h"
#include "zkprov/algebra/pairing.h"
#include "zkprov/common/parallel.h"

namespace zkprov::zkproofs {

namespace {

using algebra::G2;

G1 gen(const G1Affine& p) { return G1(p); }

// sum s_i P_i for a handful of projective points.
G1 combine(std::span<const G1> points, std::span<const Fr> scalars) {
  auto affine = G1::batch_to_affine(points);
  return algebra::msm(affine, scalars);
}

void absorb_points(Transcript& t, std::string_view label, std::span<const G1> pts) {
  for (const auto& p : pts) t.absorb(label, p);
}

}  // namespace

SignatureProof prove_signature(const KzgParams& params, const auth::PublicKey& pk, const MetadataCommitment& c,
                               const MetadataOpening& m, const auth::Signature& sigma, Transcript t,
                               RandomSource& rng) {
  if (!auth::bls_verify(pk, c.signing_bytes(), sigma)) throw ProofAbort("unauthenticated dataset");
  const size_t width = params.degree + 1;
  if (m.a.degree() >= static_cast<int>(width)) throw ProofAbort("attribute polynomial exceeds SRS degree");

  Fr k_rho = rng.scalar(), k_rho_blind = rng.scalar(), k_id = rng.scalar(), k_id_blind = rng.scalar();
  Fr k_r0 = rng.scalar(), k_r1 = rng.scalar();
  std::vector<Fr> k_a(width);
  for (auto& k : k_a) k = rng.scalar();

  G1 t_rho = gen(rho_base()).mul(k_rho) + gen(blinding_base()).mul(k_rho_blind);
  G1 t_id = gen(id_base()).mul(k_id) + gen(blinding_base()).mul(k_id_blind);
  G1 t_a = algebra::msm(params.powers, k_a) + gen(params.h).mul(k_r0) + gen(params.h_alpha).mul(k_r1);

  t.absorb("C_m", c.digest());
  t.absorb("sigma", sigma.point);
  t.absorb("C_rho", c.c_rho);
  t.absorb("C_A", c.c_a);
  t.absorb("C_id", c.c_id);
  t.absorb("T_rho", t_rho);
  t.absorb("T_id", t_id);
  t.absorb("T_A", t_a);
  Fr e = t.challenge("e");

  SignatureProof p;
  p.sigma = sigma;
  p.e = e;
  p.s_rho = k_rho + e * m.rho;
  p.s_rho_blind = k_rho_blind + e * m.rho_blind;
  p.s_id = k_id + e * m.id;
  p.s_id_blind = k_id_blind + e * m.id_blind;
  p.s_a.resize(width);
  for (size_t i = 0; i < width; ++i) p.s_a[i] = k_a[i] + e * m.a.coeff(i);
  p.s_a_r0 = k_r0 + e * m.a_blind.r0;
  p.s_a_r1 = k_r1 + e * m.a_blind.r1;
  return p;
}

bool verify_signature(const KzgParams& params, const auth::PublicKey& pk, const DatasetPublic& d,
                      const SignatureProof& proof, Transcript t) {
  auto sig_bytes = proof.sigma.to_bytes();
  if (algebra::sha256(sig_bytes) != d.c_sigma) return false;
  if (!auth::bls_verify(pk, d.meta.signing_bytes(), proof.sigma)) return false;
  if (proof.s_a.size() != params.degree + 1) return false;

  const Fr& e = proof.e;
  G1 t_rho = gen(rho_base()).mul(proof.s_rho) + gen(blinding_base()).mul(proof.s_rho_blind) - d.meta.c_rho.mul(e);
  G1 t_id = gen(id_base()).mul(proof.s_id) + gen(blinding_base()).mul(proof.s_id_blind) - d.meta.c_id.mul(e);
  G1 t_a = algebra::msm(params.powers, proof.s_a) + gen(params.h).mul(proof.s_a_r0) +
           gen(params.h_alpha).mul(proof.s_a_r1) - d.meta.c_a.mul(e);

  t.absorb("C_m", d.meta.digest());
  t.absorb("sigma", proof.sigma.point);
  t.absorb("C_rho", d.meta.c_rho);
  t.absorb("C_A", d.meta.c_a);
  t.absorb("C_id", d.meta.c_id);
  t.absorb("T_rho", t_rho);
  t.absorb("T_id", t_id);
  t.absorb("T_A", t_a);
  return t.challenge("e") == e;
}

MembershipProof prove_membership(const KzgParams& params, const accumulators::TrainingAccumulator& acc,
                                 const G1& c_rho, const Fr& rho, const Fr& rho_blind, Transcript t,
                                 RandomSource& rng) {
  if (!acc.contains(rho)) throw ProofAbort("dataset not in training collection");
  auto mw = acc.witness(params, rho);
  Fr k_rho = rng.scalar(), k_eps = rng.scalar(), k_blind = rng.scalar();
  auto t1 = algebra::pairing(-mw.w.mul(k_rho) + gen(params.h).mul(k_eps), G2(params.g2));
  G1 t2 = gen(rho_base()).mul(k_rho) + gen(blinding_base()).mul(k_blind);

  t.absorb("R_tr", acc.commitment());
  t.absorb("C_rho", c_rho);
  t.absorb("W", mw.w);
  t.absorb("T1", t1);
  t.absorb("T2", t2);
  Fr e = t.challenge("e");
  return {mw.w, e, k_rho + e * rho, k_eps + e * mw.epsilon, k_blind + e * rho_blind};
}

bool verify_membership(const KzgParams& params, const G1& r_tr, const G1& c_rho, const MembershipProof& proof,
                       Transcript t) {
  const Fr& e = proof.e;
  std::pair<G1, G2> pairs[] = {
      {-proof.w.mul(proof.s_rho) + gen(params.h).mul(proof.s_epsilon) - r_tr.mul(e), G2(params.g2)},
      {proof.w.mul(e), G2(params.g2_alpha)},
  };
  auto t1 = algebra::multi_pairing(pairs);
  G1 t2 = gen(rho_base()).mul(proof.s_rho) + gen(blinding_base()).mul(proof.s_rho_blind) - c_rho.mul(e);

  t.absorb("R_tr", r_tr);
  t.absorb("C_rho", c_rho);
  t.absorb("W", proof.w);
  t.absorb("T1", t1);
  t.absorb("T2", t2);
  return t.challenge("e") == e;
}

SlotProof prove_slot(const G1& r_tr, const G1& c_slot, const Fr& held_value, const Fr& slot_blind, Transcript t,
                     RandomSource& rng) {
  Fr d = slot_value(r_tr);
  if (held_value != d || gen(slot_base()).mul(d) + gen(blinding_base()).mul(slot_blind) != c_slot) {
    throw ProofAbort("weight commitment slot does not hold the training root");
  }
  Fr k = rng.scalar();
  t.absorb("R_tr", r_tr);
  t.absorb("C_T", c_slot);
  t.absorb("T", gen(blinding_base()).mul(k));
  Fr e = t.challenge("e");
  return {e, k + e * slot_blind};
}

bool verify_slot(const G1& r_tr, const G1& c_slot, const SlotProof& proof, Transcript t) {
  G1 rest = c_slot - gen(slot_base()).mul(slot_value(r_tr));
  t.absorb("R_tr", r_tr);
  t.absorb("C_T", c_slot);
  t.absorb("T", gen(blinding_base()).mul(proof.s) - rest.mul(proof.e));
  return t.challenge("e") == proof.e;
}

std::vector<Fr> fold_challenges(const std::vector<G1>& chunk_commitments, const G1& c_b, size_t chunk_length,
                                Transcript& t) {
  const size_t n = chunk_commitments.size();
  t.absorb_u64("layers", n);
  t.absorb_u64("chunk_length", chunk_length);
  t.absorb("C_B", c_b);
  std::vector<Fr> c(n);
  for (size_t j = 0; j < n; ++j) {
    t.absorb_u64("fold", j + 1);
    t.absorb("instance", chunk_commitments[j]);
    c[j] = j == 0 ? Fr::one() : t.challenge("c");
  }
  return c;
}

FoldedClaim fold_claims(const std::vector<Fr>& c, const std::vector<Fr>& b) {
  if (c.size() != b.size()) throw std::invalid_argument("fold: length mismatch");
  FoldedClaim f{c, Fr::zero()};
  for (size_t j = 0; j < b.size(); ++j) f.value += c[j] * b[j];
  return f;
}

std::vector<Fr> fold_vectors(const std::vector<Fr>& c, const std::vector<std::vector<Fr>>& v) {
  if (c.size() != v.size()) throw std::invalid_argument("fold: length mismatch");
  std::vector<Fr> u;
  for (size_t j = 0; j < v.size(); ++j) {
    for (const auto& x : v[j]) u.push_back(c[j] * x);
  }
  return u;
}

G1 commit_binding_values(const std::vector<Fr>& b, const Fr& blind) {
  return commitments::pedersen_commit(*binding_key(b.size()), b, blind);
}

BindingValueProof prove_binding_values(const weights::WeightDiffSet& w, const std::vector<Fr>& chunk_blinds,
                                       const std::vector<G1>& chunk_commitments,
                                       const std::vector<std::vector<Fr>>& v, const std::vector<Fr>& b,
                                       const Fr& b_blind, const G1& c_b, Transcript t, RandomSource& rng) {
  const size_t n = w.layers(), len = w.chunk_length();
  if (chunk_blinds.size() != n || chunk_commitments.size() != n || v.size() != n || b.size() != n) {
    throw std::invalid_argument("binding proof: inconsistent layer count");
  }
  for (const auto& vj : v) {
    if (vj.size() != len) throw std::invalid_argument("binding proof: inconsistent chunk length");
  }
  auto key = weight_key(len);
  auto bkey = binding_key(n);
  BindingValueProof p;
  p.fold_challenges = fold_challenges(chunk_commitments, c_b, len, t);
  const auto& c = p.fold_challenges;

  std::vector<Fr> masks(n * len);
  for (auto& m : masks) m = rng.scalar();
  std::vector<Fr> s(n);
  for (auto& x : s) x = rng.scalar();

  p.a_chunks.resize(n);
  std::vector<Fr> mask_ip(n);
  for (size_t j = 0; j < n; ++j) {
    std::span<const Fr> tj(masks.data() + j * len, len);
    p.a_chunks[j] = key->msm(tj) + gen(blinding_base()).mul(s[j]);
  }
  parallel_for(n, [&](size_t lo, size_t hi) {
    for (size_t j = lo; j < hi; ++j) {
      Fr acc;
      for (size_t k = 0; k < len; ++k) acc += masks[j * len + k] * v[j][k];
      mask_ip[j] = acc;
    }
  });
  // tau chosen so that sum c_j <t_j, v_j> = sum c_j tau_j.
  std::vector<Fr> tau(n);
  Fr target;
  for (size_t j = 0; j < n; ++j) target += c[j] * mask_ip[j];
  for (size_t j = 0; j + 1 < n; ++j) {
    tau[j] = rng.scalar();
    target -= c[j] * tau[j];
  }
  tau[n - 1] = target * c[n - 1].inverse();
  Fr s_b = rng.scalar();
  p.a_b = commitments::pedersen_commit(*bkey, tau, s_b);

  absorb_points(t, "A_j", p.a_chunks);
  t.absorb("A_B", p.a_b);
  Fr e = t.challenge("e");

  p.z.resize(n * len);
  auto padded = w.padded();
  parallel_for(n * len, [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) p.z[i] = masks[i] + e * weights::encode(padded[i]);
  }, 4096);
  p.z_blind.resize(n);
  p.z_b.resize(n);
  for (size_t j = 0; j < n; ++j) {
    p.z_blind[j] = s[j] + e * chunk_blinds[j];
    p.z_b[j] = tau[j] + e * b[j];
  }
  p.z_b_blind = s_b + e * b_blind;
  return p;
}

bool verify_binding_values(const std::vector<G1>& chunk_commitments, size_t chunk_length,
                           const std::vector<std::vector<Fr>>& v, const G1& c_b, const BindingValueProof& proof,
                           Transcript t) {
  const size_t n = chunk_commitments.size(), len = chunk_length;
  if (n == 0 || v.size() != n || proof.fold_challenges.size() != n || proof.a_chunks.size() != n ||
      proof.z.size() != n * len || proof.z_blind.size() != n || proof.z_b.size() != n) {
    return false;
  }
  auto c = fold_challenges(chunk_commitments, c_b, len, t);
  if (c != proof.fold_challenges) return false;
  absorb_points(t, "A_j", proof.a_chunks);
  t.absorb("A_B", proof.a_b);
  Fr e = t.challenge("e");

  // Aggregated linear claim on the responses.
  std::vector<Fr> per_layer(n);
  parallel_for(n, [&](size_t lo, size_t hi) {
    for (size_t j = lo; j < hi; ++j) {
      Fr acc;
      for (size_t k = 0; k < len; ++k) acc += proof.z[j * len + k] * v[j][k];
      per_layer[j] = c[j] * acc;
    }
  });
  Fr lhs, rhs;
  for (size_t j = 0; j < n; ++j) {
    lhs += per_layer[j];
    rhs += c[j] * proof.z_b[j];
  }
  bool linear_ok = lhs == rhs;

  // Opening checks for every chunk and for C_B, batched with powers of beta.
  algebra::Sha256 h;
  for (const auto& z : proof.z) h.update(z.to_bytes_le());
  for (const auto& z : proof.z_blind) h.update(z.to_bytes_le());
  for (const auto& z : proof.z_b) h.update(z.to_bytes_le());
  h.update(proof.z_b_blind.to_bytes_le());
  t.absorb("responses", h.finish());
  Fr beta = t.challenge("batch");
  std::vector<Fr> pow(n + 1);
  pow[0] = Fr::one();
  for (size_t j = 1; j <= n; ++j) pow[j] = pow[j - 1] * beta;

  auto key = weight_key(len);
  auto bkey = binding_key(n);
  std::vector<Fr> gen_scalars(len);
  parallel_for(len, [&](size_t lo, size_t hi) {
    for (size_t k = lo; k < hi; ++k) {
      Fr acc;
      for (size_t j = 0; j < n; ++j) acc += pow[j] * proof.z[j * len + k];
      gen_scalars[k] = acc;
    }
  }, 1024);

  std::vector<G1> pts;
  std::vector<Fr> sc;
  Fr h_scalar = pow[n] * proof.z_b_blind;
  for (size_t j = 0; j < n; ++j) {
    h_scalar += pow[j] * proof.z_blind[j];
    pts.push_back(proof.a_chunks[j]);
    sc.push_back(-pow[j]);
    pts.push_back(chunk_commitments[j]);
    sc.push_back(-(e * pow[j]));
    pts.push_back(G1(bkey->generator(j)));
    sc.push_back(pow[n] * proof.z_b[j]);
  }
  pts.push_back(proof.a_b);
  sc.push_back(-pow[n]);
  pts.push_back(c_b);
  sc.push_back(-(e * pow[n]));
  pts.push_back(G1(blinding_base()));
  sc.push_back(h_scalar);

  G1 total = key->msm(gen_scalars) + combine(pts, sc);
  return linear_ok && total.is_identity();
}

AttributeProof prove_attribute_match(const KzgParams& params, const G1& c_a, const Polynomial& a, const KzgBlind& a_blind,
                                     const std::set<std::string>& att_p, Transcript t, RandomSource& rng) {
  auto division = a.divide(query_polynomial(att_p));
  if (!division.remainder.is_zero()) throw ProofAbort("no relevant dataset");
  const Polynomial& q = division.quotient;
  KzgBlind q_blind = KzgBlind::random(rng);
  AttributeProof p;
  p.c_q = commitments::kzg_commit(params, q, q_blind);

  t.absorb("C_A", c_a);
  t.absorb_u64("attributes", att_p.size());
  for (const auto& attr : att_p) t.absorb("attribute", attr);
  t.absorb("C_Q", p.c_q);
  Fr z = t.challenge("z");

  Fr pz = query_polynomial(att_p).evaluate(z);
  Polynomial r = a - Polynomial::constant(pz) * q;
  KzgBlind r_blind{a_blind.r0 - pz * q_blind.r0, a_blind.r1 - pz * q_blind.r1};
  auto opening = commitments::kzg_open(params, r, r_blind, z);
  p.w = opening.proof;
  p.blind_eval = opening.blind_eval;
  return p;
}

bool verify_attribute_match(const KzgParams& params, const G1& c_a, const std::set<std::string>& att_p,
                            const AttributeProof& proof, Transcript t) {
  t.absorb("C_A", c_a);
  t.absorb_u64("attributes", att_p.size());
  for (const auto& attr : att_p) t.absorb("attribute", attr);
  t.absorb("C_Q", proof.c_q);
  Fr z = t.challenge("z");
  Fr pz = query_polynomial(att_p).evaluate(z);
  G1 c_r = c_a - proof.c_q.mul(pz);
  return commitments::kzg_verify(params, c_r, z, {Fr::zero(), proof.w, proof.blind_eval});
}

}  // namespace zkprov::zkproofs
