#pragma once

#include <vector>

#include "zkprov/zkproofs/statement.h"
#include "zkprov/zkproofs/transcript.h"

namespace zkprov::zkproofs {

// Signature on C_m plus knowledge of the openings of C_rho, C_A and C_id.
// Challenge-response form: the verifier recomputes the prover's first messages.
struct SignatureProof {
  auth::Signature sigma;
  Fr e;
  Fr s_rho, s_rho_blind;
  Fr s_id, s_id_blind;
  std::vector<Fr> s_a;  // srs degree + 1 coefficients
  Fr s_a_r0, s_a_r1;
};

// Accumulator witness W and a proof that the scalar behind C_rho satisfies
// e(R_tr, g2) e(W, g2^alpha)^{-1} = e(-rho W + epsilon h, g2).
struct MembershipProof {
  G1 w;
  Fr e;
  Fr s_rho, s_epsilon, s_rho_blind;
};

// Knowledge of r_T with C_T - d_R G_slot = r_T H.
struct SlotProof {
  Fr e;
  Fr s;
};

// Aggregated linear claim sum_j c_j <dW_j, v_j> = sum_j c_j B_j against the
// chunk commitments and C_B.
struct BindingValueProof {
  std::vector<Fr> fold_challenges;  // c_1 = 1, c_2..c_N from the transcript
  std::vector<G1> a_chunks;
  G1 a_b;
  std::vector<Fr> z;        // N * L
  std::vector<Fr> z_blind;  // N
  std::vector<Fr> z_b;      // N
  Fr z_b_blind;
};

// C_Q commits to A / P_p; R = A - P_p(z) Q opens to zero at z.
struct AttributeProof {
  G1 c_q;
  G1 w;
  Fr blind_eval;
};

SignatureProof prove_signature(const KzgParams& params, const auth::PublicKey& pk, const MetadataCommitment& c,
                               const MetadataOpening& m, const auth::Signature& sigma, Transcript t,
                               RandomSource& rng);
bool verify_signature(const KzgParams& params, const auth::PublicKey& pk, const DatasetPublic& d,
                      const SignatureProof& proof, Transcript t);

MembershipProof prove_membership(const KzgParams& params, const accumulators::TrainingAccumulator& acc,
                                 const G1& c_rho, const Fr& rho, const Fr& rho_blind, Transcript t,
                                 RandomSource& rng);
bool verify_membership(const KzgParams& params, const G1& r_tr, const G1& c_rho, const MembershipProof& proof,
                       Transcript t);

// Aborts unless the slot opens to slot_value(r_tr).
SlotProof prove_slot(const G1& r_tr, const G1& c_slot, const Fr& held_value, const Fr& slot_blind, Transcript t,
                     RandomSource& rng);
bool verify_slot(const G1& r_tr, const G1& c_slot, const SlotProof& proof, Transcript t);

struct FoldedClaim {
  std::vector<Fr> c;  // per-fold challenges
  Fr value;           // B* = sum c_j B_j
};

// Runs the pairwise fold over the claim values S_j = S_{j-1} + c_j B_j.
std::vector<Fr> fold_challenges(const std::vector<G1>& chunk_commitments, const G1& c_b, size_t chunk_length,
                                Transcript& t);
FoldedClaim fold_claims(const std::vector<Fr>& c, const std::vector<Fr>& b);
// u = (c_1 v_1 || ... || c_N v_N)
std::vector<Fr> fold_vectors(const std::vector<Fr>& c, const std::vector<std::vector<Fr>>& v);

G1 commit_binding_values(const std::vector<Fr>& b, const Fr& blind);

BindingValueProof prove_binding_values(const weights::WeightDiffSet& w, const std::vector<Fr>& chunk_blinds,
                                       const std::vector<G1>& chunk_commitments,
                                       const std::vector<std::vector<Fr>>& v, const std::vector<Fr>& b,
                                       const Fr& b_blind, const G1& c_b, Transcript t, RandomSource& rng);
bool verify_binding_values(const std::vector<G1>& chunk_commitments, size_t chunk_length,
                           const std::vector<std::vector<Fr>>& v, const G1& c_b, const BindingValueProof& proof,
                           Transcript t);

// Aborts with "no relevant dataset" when P_p does not divide A.
AttributeProof prove_attribute_match(const KzgParams& params, const G1& c_a, const Polynomial& a, const KzgBlind& a_blind,
                                     const std::set<std::string>& att_p, Transcript t, RandomSource& rng);
bool verify_attribute_match(const KzgParams& params, const G1& c_a, const std::set<std::string>& att_p,
                            const AttributeProof& proof, Transcript t);

}  // namespace zkprov::zkproofs
