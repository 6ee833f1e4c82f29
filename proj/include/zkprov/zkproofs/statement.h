#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "zkprov/accumulators/training_accumulator.h"
#include "zkprov/auth/bls.h"
#include "zkprov/commitments/kzg.h"
#include "zkprov/commitments/pedersen.h"
#include "zkprov/weights/weights.h"

namespace zkprov::zkproofs {

using algebra::Fr;
using algebra::G1;
using algebra::G1Affine;
using commitments::KzgBlind;
using commitments::KzgParams;
using commitments::PedersenKey;
using commitments::Polynomial;

class ProofAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Real attributes live under "attr:", salts under "salt:".
Fr attribute_root(std::string_view attribute);
Fr salt_root(std::string_view salt);
Polynomial query_polynomial(const std::set<std::string>& attributes);
// A_i(X): the query polynomial of the attributes times (X - salt root).
Polynomial dataset_polynomial(const std::set<std::string>& attributes, std::string_view salt);

// Pedersen bases, all derived by hash-to-curve.
const G1Affine& rho_base();
const G1Affine& id_base();
const G1Affine& slot_base();
const G1Affine& base_model_base();
const G1Affine& blinding_base();
std::shared_ptr<const PedersenKey> weight_key(size_t chunk_length);
// Builds the fixed-base table for the weight generators. Pays off for long-lived provers: one
// build costs roughly as much as twenty plain chunk MSMs.
void precompute_weight_table(size_t chunk_length);
std::shared_ptr<const PedersenKey> binding_key(size_t layers);

struct MetadataCommitment {
  G1 c_rho;
  G1 c_a;
  G1 c_id;
  // C_m = hash_to_field(C_rho || C_A || C_id, kappa_4); the value the CA signs.
  Fr digest() const;
  Bytes signing_bytes() const;
};

struct MetadataOpening {
  Fr rho;
  Fr rho_blind;
  Fr id;
  Fr id_blind;
  std::set<std::string> attributes;
  std::string salt;
  Polynomial a;  // prod over attributes and salt of (X - root)
  KzgBlind a_blind;

  static MetadataOpening create(const Fr& rho, std::string_view id, std::set<std::string> attributes,
                                RandomSource& rng);
  MetadataCommitment commit(const KzgParams& params) const;
};

struct DatasetPublic {
  MetadataCommitment meta;
  algebra::Digest c_sigma;  // SHA-256 of the compressed signature
};

// Public side of the commitment set.
struct Statement {
  std::shared_ptr<const KzgParams> srs;
  auth::PublicKey pk_ca;
  std::vector<DatasetPublic> datasets;
  size_t layers = 0;
  size_t chunk_length = 0;
  std::vector<G1> chunk_commitments;
  G1 slot_commitment;
  G1 c_w0;
  G1 r_tr;

  std::vector<G1> delta_w_points() const;  // chunks then slot
  weights::SeedInputs seed_inputs(size_t index, const std::set<std::string>& att_p, std::string_view prompt,
                                  std::string_view response) const;
};

// d_R = hash_to_field(R_tr bytes, kappa_4), the value held by the slot.
Fr slot_value(const G1& r_tr);

// All challenge vectors v_1..v_N for a seed.
std::vector<std::vector<Fr>> challenge_vectors(const Fr& seed, size_t layers, size_t chunk_length);

}  // namespace zkprov::zkproofs
