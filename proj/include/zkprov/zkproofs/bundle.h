#pragma once

#include <optional>
#include <string>

#include "zkprov/zkproofs/subproofs.h"

namespace zkprov::zkproofs {

enum class Reason : uint8_t {
  kSignature = 0,
  kMembership = 1,
  kBinding = 2,
  kBindingValues = 3,
  kAttributes = 4,
  kMalformed = 5,
};

inline constexpr uint32_t kReasonTableVersion = 1;

std::string_view reason_name(Reason r);

struct Verdict {
  uint32_t failed = 0;  // bit per Reason

  bool accepted() const { return failed == 0; }
  bool has(Reason r) const { return (failed >> static_cast<unsigned>(r)) & 1u; }
  // Reported reason when several checks fail: malformed, then binding-values
  // (a changed query transcript breaks every sub-proof at once), then the
  // remaining checks in bundle order.
  std::optional<Reason> primary() const;
  std::string describe() const;
};

struct ProofBundle {
  uint32_t dataset_index = 0;
  SignatureProof sigma;
  MembershipProof tr;
  SlotProof bind;
  BindingValueProof b_rec;
  AttributeProof match;
  G1 c_b;

  // "ZKPPRF1" body with SHA-256 trailer.
  Bytes serialize() const;
  static ProofBundle deserialize(std::span<const uint8_t> data);
};

struct ProverWitness {
  MetadataOpening meta;
  auth::Signature sigma;
  const accumulators::TrainingAccumulator* accumulator = nullptr;
  const weights::WeightDiffSet* diffs = nullptr;
  std::vector<Fr> chunk_blinds;
  Fr slot_held;  // value the prover committed in the slot
  Fr slot_blind;
};

// Root transcript shared by prover and verifier; the sub-proofs fork from it.
Transcript bundle_transcript(const Fr& seed, uint32_t index);

ProofBundle prove_bundle(const Statement& st, uint32_t index, const ProverWitness& wit,
                         const std::set<std::string>& att_p, std::string_view prompt, std::string_view response,
                         RandomSource& rng);

// Evaluates all five checks before returning.
Verdict verify_bundle(const Statement& st, const std::set<std::string>& att_p, std::string_view prompt,
                      std::string_view response, const ProofBundle& pi);
Verdict verify_bundle_bytes(const Statement& st, const std::set<std::string>& att_p, std::string_view prompt,
                            std::string_view response, std::span<const uint8_t> bundle);

}  // namespace zkprov::zkproofs
