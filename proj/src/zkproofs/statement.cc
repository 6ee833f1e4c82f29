#include "zkprov/zkproofs/statement.h"

#include "zkprov/algebra/hash.h"
#include "zkprov/common/parallel.h"

namespace zkprov::zkproofs {

namespace {

const G1Affine& single(const char* family) { return PedersenKey::get(family, 1)->generator(0); }

}  // namespace

Fr attribute_root(std::string_view attribute) {
  return algebra::hash_to_field("attr:" + std::string(attribute), algebra::kKappaAccum);
}

Fr salt_root(std::string_view salt) { return algebra::hash_to_field("salt:" + std::string(salt), algebra::kKappaAccum); }

Polynomial query_polynomial(const std::set<std::string>& attributes) {
  std::vector<Fr> roots;
  for (const auto& a : attributes) roots.push_back(attribute_root(a));
  return Polynomial::from_roots(roots);
}

Polynomial dataset_polynomial(const std::set<std::string>& attributes, std::string_view salt) {
  std::vector<Fr> roots;
  for (const auto& a : attributes) roots.push_back(attribute_root(a));
  roots.push_back(salt_root(salt));
  return Polynomial::from_roots(roots);
}

const G1Affine& rho_base() { return single("rho"); }
const G1Affine& id_base() { return single("id"); }
const G1Affine& slot_base() { return single("slot"); }
const G1Affine& base_model_base() { return single("base-model"); }
const G1Affine& blinding_base() { return PedersenKey::blinding_base(); }
std::shared_ptr<const PedersenKey> weight_key(size_t chunk_length) { return PedersenKey::get("weights", chunk_length); }

void precompute_weight_table(size_t chunk_length) { weight_key(chunk_length)->table(); }
std::shared_ptr<const PedersenKey> binding_key(size_t layers) { return PedersenKey::get("binding", layers); }

Bytes MetadataCommitment::signing_bytes() const {
  auto d = digest().to_bytes_le();
  return Bytes(d.begin(), d.end());
}

Fr MetadataCommitment::digest() const {
  ByteWriter w;
  w.raw(algebra::g1_to_bytes(c_rho));
  w.raw(algebra::g1_to_bytes(c_a));
  w.raw(algebra::g1_to_bytes(c_id));
  return algebra::hash_to_field(w.bytes(), algebra::kKappaAccum);
}

MetadataOpening MetadataOpening::create(const Fr& rho, std::string_view id, std::set<std::string> attributes,
                                        RandomSource& rng) {
  MetadataOpening m;
  m.rho = rho;
  m.rho_blind = rng.scalar();
  m.id = algebra::hash_to_field("id:" + std::string(id), algebra::kKappaAccum);
  m.id_blind = rng.scalar();
  std::array<uint8_t, 16> salt;
  rng.fill(salt);
  m.salt = to_hex(salt);
  m.a = dataset_polynomial(attributes, m.salt);
  m.attributes = std::move(attributes);
  m.a_blind = KzgBlind::random(rng);
  return m;
}

MetadataCommitment MetadataOpening::commit(const KzgParams& params) const {
  MetadataCommitment c;
  c.c_rho = G1(rho_base()).mul(rho) + G1(blinding_base()).mul(rho_blind);
  c.c_a = commitments::kzg_commit(params, a, a_blind);
  c.c_id = G1(id_base()).mul(id) + G1(blinding_base()).mul(id_blind);
  return c;
}

std::vector<G1> Statement::delta_w_points() const {
  std::vector<G1> pts = chunk_commitments;
  pts.push_back(slot_commitment);
  return pts;
}

weights::SeedInputs Statement::seed_inputs(size_t index, const std::set<std::string>& att_p,
                                           std::string_view prompt, std::string_view response) const {
  const auto& d = datasets.at(index);
  return {d.meta.digest(), d.c_sigma, delta_w_points(), c_w0, att_p, std::string(prompt), std::string(response)};
}

Fr slot_value(const G1& r_tr) { return algebra::hash_to_field(algebra::g1_to_bytes(r_tr), algebra::kKappaAccum); }

std::vector<std::vector<Fr>> challenge_vectors(const Fr& seed, size_t layers, size_t chunk_length) {
  std::vector<std::vector<Fr>> v(layers);
  for (size_t j = 0; j < layers; ++j) v[j] = weights::derive_challenge_vector(seed, static_cast<uint32_t>(j + 1), chunk_length);
  return v;
}

}  // namespace zkprov::zkproofs
