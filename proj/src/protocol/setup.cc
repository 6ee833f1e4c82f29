#include <algorithm>

#include "codec.h"
#include "zkprov/common/io.h"
#include "zkprov/protocol/protocol.h"

namespace zkprov::protocol {

using namespace codec;

namespace {

constexpr std::string_view kPackageMagic = "ZKPAP1";
constexpr std::string_view kCommitmentMagic = "ZKPC1";
constexpr uint32_t kCommitmentVersion = 1;

}  // namespace

AuthenticatedDataset authenticate(const commitments::KzgParams& params, const auth::KeyPair& ca,
                                  const DatasetInput& input, RandomSource& rng) {
  if (input.records.empty()) throw std::invalid_argument("dataset " + input.id + " has no records");
  AuthenticatedDataset d;
  d.id = input.id;
  for (const auto& rec : input.records) {
    auto canonical = accumulators::canonicalize_record(rec);
    d.records.emplace_back(canonical.begin(), canonical.end());
  }
  d.meta = MetadataOpening::create(d.tree().root(), input.id, input.attributes, rng);
  if (d.meta.a.degree() > static_cast<int>(params.degree)) {
    throw std::invalid_argument("dataset " + input.id + " has more attributes than the SRS supports");
  }
  d.commitment = d.meta.commit(params);
  d.sigma = auth::bls_sign(ca, d.commitment.signing_bytes());
  return d;
}

Bytes AuthenticationPackage::serialize() const {
  ByteWriter w;
  w.raw(kPackageMagic);
  w.raw(pk_ca.to_bytes());
  w.u32(static_cast<uint32_t>(datasets.size()));
  for (const auto& d : datasets) {
    w.str(d.id);
    w.u32(static_cast<uint32_t>(d.records.size()));
    for (const auto& r : d.records) w.blob(r);
    put_opening(w, d.meta);
    put_commitment(w, d.commitment);
    w.raw(d.sigma.to_bytes());
  }
  return seal(std::move(w));
}

AuthenticationPackage AuthenticationPackage::deserialize(std::span<const uint8_t> data) {
  try {
    auto body = unseal(data);
    ByteReader r(body);
    check_magic(r, kPackageMagic);
    AuthenticationPackage ap;
    ap.pk_ca = auth::PublicKey::from_bytes(r.take(algebra::kG2Bytes));
    uint32_t m = r.u32();
    for (uint32_t i = 0; i < m; ++i) {
      AuthenticatedDataset d;
      d.id = r.str();
      uint32_t n = r.u32();
      for (uint32_t k = 0; k < n; ++k) {
        auto rec = r.blob();
        d.records.emplace_back(rec.begin(), rec.end());
      }
      d.meta = get_opening(r);
      d.commitment = get_commitment(r);
      d.sigma = auth::Signature::from_bytes(r.take(algebra::kG1Bytes));
      ap.datasets.push_back(std::move(d));
    }
    r.expect_end();
    return ap;
  } catch (const algebra::EncodingError& e) {
    throw DecodeError(e.what());
  }
}

const Digest& CommitmentSet::digest() const {
  if (!finalized_) throw PhaseError("setup has not been finalized");
  return digest_;
}

Bytes CommitmentSet::encode_body() const {
  ByteWriter w;
  w.raw(kCommitmentMagic);
  w.u32(kCommitmentVersion);
  w.blob(st_.srs->serialize());
  w.raw(st_.pk_ca.to_bytes());
  w.u32(static_cast<uint32_t>(st_.datasets.size()));
  for (const auto& d : st_.datasets) {
    put_commitment(w, d.meta);
    w.raw(d.c_sigma);
  }
  w.u32(static_cast<uint32_t>(st_.layers));
  w.u64(st_.chunk_length);
  for (const auto& c : st_.chunk_commitments) put(w, c);
  put(w, st_.slot_commitment);
  put(w, st_.c_w0);
  put(w, st_.r_tr);
  return w.take();
}

Bytes CommitmentSet::serialize() const {
  if (!finalized_) throw PhaseError("cannot publish a draft commitment set");
  ByteWriter w;
  w.raw(encode_body());
  return seal(std::move(w));
}

CommitmentSet CommitmentSet::deserialize(std::span<const uint8_t> data) {
  try {
    auto body = unseal(data);
    ByteReader r(body);
    check_magic(r, kCommitmentMagic);
    if (r.u32() != kCommitmentVersion) throw DecodeError("unsupported commitment set version");
    CommitmentSet cs;
    auto srs = std::make_shared<commitments::KzgParams>(commitments::KzgParams::deserialize(r.blob()));
    if (!srs->consistent()) throw DecodeError("inconsistent SRS");
    cs.st_.srs = std::move(srs);
    cs.st_.pk_ca = auth::PublicKey::from_bytes(r.take(algebra::kG2Bytes));
    uint32_t m = r.u32();
    if (m == 0 || static_cast<size_t>(m) * 128 > r.remaining()) throw DecodeError("bad dataset count");
    for (uint32_t i = 0; i < m; ++i) {
      zkproofs::DatasetPublic d;
      d.meta = get_commitment(r);
      auto cs_bytes = r.take(32);
      std::copy(cs_bytes.begin(), cs_bytes.end(), d.c_sigma.begin());
      cs.st_.datasets.push_back(d);
    }
    cs.st_.layers = r.u32();
    cs.st_.chunk_length = r.u64();
    if (cs.st_.layers == 0 || cs.st_.chunk_length == 0 ||
        static_cast<size_t>(cs.st_.layers) * algebra::kG1Bytes > r.remaining()) {
      throw DecodeError("bad layer layout");
    }
    for (size_t j = 0; j < cs.st_.layers; ++j) cs.st_.chunk_commitments.push_back(get_g1(r));
    cs.st_.slot_commitment = get_g1(r);
    cs.st_.c_w0 = get_g1(r);
    cs.st_.r_tr = get_g1(r);
    r.expect_end();
    cs.digest_ = algebra::sha256(body);
    cs.finalized_ = true;
    return cs;
  } catch (const algebra::EncodingError& e) {
    throw DecodeError(e.what());
  } catch (const commitments::ParameterError& e) {
    throw DecodeError(e.what());
  }
}

void CommitmentSet::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

CommitmentSet CommitmentSet::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

SetupSession::SetupSession(std::shared_ptr<const commitments::KzgParams> srs, auth::PublicKey pk_ca) {
  if (!srs) throw std::invalid_argument("SRS required");
  cs_.st_.srs = std::move(srs);
  cs_.st_.pk_ca = std::move(pk_ca);
}

size_t SetupSession::add_dataset(const AuthenticatedDataset& d) {
  if (done_) throw PhaseError("setup already finalized");
  if (trained_) throw PhaseError("datasets must be added before the training commitments");
  if (!auth::bls_verify(cs_.st_.pk_ca, d.commitment.signing_bytes(), d.sigma)) {
    throw SetupAbort("signature verification failed for dataset " + d.id);
  }
  for (const auto& existing : w_.datasets) {
    if (existing.id == d.id) throw std::invalid_argument("duplicate dataset id " + d.id);
  }
  // The opening must match what the CA signed and the records must hash to rho.
  if (d.tree().root() != d.meta.rho) throw SetupAbort("dataset " + d.id + " records do not match its root");
  auto recomputed = d.meta.commit(*cs_.st_.srs);
  if (recomputed.c_rho != d.commitment.c_rho || recomputed.c_a != d.commitment.c_a ||
      recomputed.c_id != d.commitment.c_id) {
    throw SetupAbort("dataset " + d.id + " opening does not match its commitment");
  }
  auto sig = d.sigma.to_bytes();
  cs_.st_.datasets.push_back({d.commitment, algebra::sha256(sig)});
  w_.datasets.push_back({d.id, d.meta, d.sigma});
  return w_.datasets.size() - 1;
}

void SetupSession::add_package(const AuthenticationPackage& ap) {
  if (!(ap.pk_ca == cs_.st_.pk_ca)) throw SetupAbort("authentication package is signed by a different CA key");
  // Check every signature before recording any dataset.
  for (const auto& d : ap.datasets) {
    if (!auth::bls_verify(ap.pk_ca, d.commitment.signing_bytes(), d.sigma)) {
      throw SetupAbort("signature verification failed for dataset " + d.id);
    }
  }
  for (const auto& d : ap.datasets) add_dataset(d);
}

void SetupSession::commit_training(std::vector<uint32_t> selection, weights::WeightDiffSet diffs, RandomSource& rng) {
  if (done_) throw PhaseError("setup already finalized");
  if (trained_) throw PhaseError("training commitments already made");
  if (selection.empty()) throw std::invalid_argument("training selection is empty");
  std::vector<Fr> roots;
  std::set<uint32_t> seen;
  for (uint32_t i : selection) {
    if (i >= w_.datasets.size()) throw std::out_of_range("selected dataset index out of range");
    if (!seen.insert(i).second) throw std::invalid_argument("dataset selected twice");
    roots.push_back(w_.datasets[i].meta.rho);
  }
  const auto& params = *cs_.st_.srs;
  w_.accumulator_blind = commitments::KzgBlind::random(rng);
  w_.accumulator = std::make_shared<accumulators::TrainingAccumulator>(
      accumulators::TrainingAccumulator::build(params, roots, w_.accumulator_blind));
  w_.selection = std::move(selection);

  auto& st = cs_.st_;
  st.r_tr = w_.accumulator->commitment();
  st.layers = diffs.layers();
  st.chunk_length = diffs.chunk_length();
  auto key = zkproofs::weight_key(st.chunk_length);
  w_.chunk_blinds.resize(st.layers);
  st.chunk_commitments.resize(st.layers);
  for (size_t j = 0; j < st.layers; ++j) {
    w_.chunk_blinds[j] = rng.scalar();
    st.chunk_commitments[j] = commitments::pedersen_commit_small(*key, diffs.chunk(j), w_.chunk_blinds[j]);
  }
  w_.slot_blind = rng.scalar();
  st.slot_commitment = G1(zkproofs::slot_base()).mul(zkproofs::slot_value(st.r_tr)) +
                       G1(zkproofs::blinding_base()).mul(w_.slot_blind);
  w_.diffs = std::make_shared<weights::WeightDiffSet>(std::move(diffs));
  trained_ = true;
}

Digest base_model_digest(std::span<const uint8_t> manifest) { return algebra::sha256(manifest); }

void SetupSession::commit_base_model(std::span<const uint8_t> manifest, RandomSource& rng) {
  if (done_) throw PhaseError("setup already finalized");
  w_.base_model_value = algebra::hash_to_field(base_model_digest(manifest), algebra::kKappaAccum);
  w_.base_model_blind = rng.scalar();
  cs_.st_.c_w0 = G1(zkproofs::base_model_base()).mul(w_.base_model_value) +
                 G1(zkproofs::blinding_base()).mul(w_.base_model_blind);
  base_committed_ = true;
}

SetupSession::Result SetupSession::finalize() {
  if (done_) throw PhaseError("setup already finalized");
  if (w_.datasets.empty()) throw PhaseError("no datasets added");
  if (!trained_) throw PhaseError("training commitments missing");
  if (!base_committed_) throw PhaseError("base model commitment missing");
  cs_.digest_ = algebra::sha256(cs_.encode_body());
  cs_.finalized_ = true;
  w_.setup_digest = cs_.digest_;
  done_ = true;
  return {cs_, w_};
}

}  // namespace zkprov::protocol
