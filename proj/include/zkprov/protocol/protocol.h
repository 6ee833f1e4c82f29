#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zkprov/accumulators/dataset_tree.h"
#include "zkprov/zkproofs/bundle.h"

namespace zkprov::protocol {

using algebra::Digest;
using algebra::Fr;
using algebra::G1;
using zkproofs::MetadataCommitment;
using zkproofs::MetadataOpening;
using zkproofs::Statement;
using zkproofs::Verdict;

class SetupAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PhaseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---- Authentication (certification authority) ----

struct DatasetInput {
  std::string id;
  std::vector<std::string> records;  // JSON objects, canonicalized on use
  std::set<std::string> attributes;
};

struct AuthenticatedDataset {
  std::string id;
  std::vector<Bytes> records;  // canonical bytes
  MetadataOpening meta;
  MetadataCommitment commitment;
  auth::Signature sigma;

  accumulators::DatasetTree tree() const { return accumulators::DatasetTree::build(records); }
};

AuthenticatedDataset authenticate(const commitments::KzgParams& params, const auth::KeyPair& ca,
                                  const DatasetInput& input, RandomSource& rng);

// Package handed from the CA to the model owner: "ZKPAP1" with trailer.
struct AuthenticationPackage {
  auth::PublicKey pk_ca;
  std::vector<AuthenticatedDataset> datasets;

  Bytes serialize() const;
  static AuthenticationPackage deserialize(std::span<const uint8_t> data);
};

// ---- Setup ----

// Public commitment set. Immutable once finalized; the digest covers the full
// "ZKPC1" encoding.
class CommitmentSet {
 public:
  bool finalized() const { return finalized_; }
  const Statement& statement() const { return st_; }
  // Throws PhaseError before finalization.
  const Digest& digest() const;
  std::string digest_hex() const { return to_hex(digest()); }

  Bytes serialize() const;  // requires finalization
  static CommitmentSet deserialize(std::span<const uint8_t> data);
  void save(const std::filesystem::path& path) const;
  static CommitmentSet load(const std::filesystem::path& path);

 private:
  friend class SetupSession;
  Bytes encode_body() const;
  Statement st_;
  Digest digest_{};
  bool finalized_ = false;
};

struct DatasetSecrets {
  std::string id;
  MetadataOpening meta;
  auth::Signature sigma;
};

// Private witnesses. Never part of any public artifact.
struct WitnessSet {
  Digest setup_digest{};
  std::vector<DatasetSecrets> datasets;
  std::vector<uint32_t> selection;  // 0-based dataset indices used for training
  commitments::KzgBlind accumulator_blind;
  std::shared_ptr<const weights::WeightDiffSet> diffs;
  std::vector<Fr> chunk_blinds;
  Fr slot_blind;
  Fr base_model_value;
  Fr base_model_blind;
  std::shared_ptr<const accumulators::TrainingAccumulator> accumulator;

  Bytes serialize() const;
  static WitnessSet deserialize(std::span<const uint8_t> data, const commitments::KzgParams& params);
  // AES-256-GCM under a PBKDF2-SHA256 key derived from the passphrase; mode 0600.
  void save_encrypted(const std::filesystem::path& path, std::string_view passphrase) const;
  static WitnessSet load_encrypted(const std::filesystem::path& path, std::string_view passphrase,
                                   const commitments::KzgParams& params);
};

// Collects the setup inputs, then finalizes once.
class SetupSession {
 public:
  SetupSession(std::shared_ptr<const commitments::KzgParams> srs, auth::PublicKey pk_ca);

  // Verifies sigma before anything is committed. Throws SetupAbort on a bad
  // signature and std::invalid_argument on a duplicate id.
  size_t add_dataset(const AuthenticatedDataset& d);
  void add_package(const AuthenticationPackage& ap);

  // Builds R_tr over the selected roots and C_dW = (chunk commitments, slot).
  void commit_training(std::vector<uint32_t> selection, weights::WeightDiffSet diffs, RandomSource& rng);
  // C_W0 commits to the SHA-256 digest of the base-model manifest.
  void commit_base_model(std::span<const uint8_t> manifest, RandomSource& rng);

  // Draft view; prove/verify refuse it.
  const CommitmentSet& draft() const { return cs_; }

  struct Result {
    CommitmentSet commitments;
    WitnessSet witness;
  };
  Result finalize();

 private:
  CommitmentSet cs_;
  WitnessSet w_;
  bool trained_ = false;
  bool base_committed_ = false;
  bool done_ = false;
};

Digest base_model_digest(std::span<const uint8_t> manifest);

// ---- Prove / verify ----

// Lowest selected index whose attributes contain att_p; throws
// zkproofs::ProofAbort("no relevant dataset") otherwise.
uint32_t select_dataset(const WitnessSet& w, const std::set<std::string>& att_p);

struct ProveResult {
  std::string response;
  zkproofs::ProofBundle bundle;
  uint32_t dataset_index;
};

ProveResult prove(const CommitmentSet& cs, const WitnessSet& w, std::string_view prompt,
                  const std::set<std::string>& att_p, RandomSource& rng);

// Total: malformed inputs become Reject(malformed).
Verdict verify(const CommitmentSet& cs, const std::set<std::string>& att_p, std::string_view prompt,
               std::string_view response, std::span<const uint8_t> bundle);

// response.json
struct ResponseFile {
  std::string prompt;
  std::set<std::string> attributes;
  std::string response;
  Bytes proof;
  std::string setup_digest;

  std::string to_json() const;
  // Throws DecodeError on malformed JSON.
  static ResponseFile from_json(std::string_view text);
};

// Also rejects (malformed) when the response was produced against another setup.
Verdict verify_response(const CommitmentSet& cs, const ResponseFile& rf);

}  // namespace zkprov::protocol
