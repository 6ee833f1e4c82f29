#include <json.hpp>

#include <algorithm>

#include "zkprov/protocol/protocol.h"

namespace zkprov::protocol {

namespace {

Verdict malformed() { return Verdict{1u << static_cast<unsigned>(zkproofs::Reason::kMalformed)}; }

void check_phase(const CommitmentSet& cs) {
  if (!cs.finalized()) throw PhaseError("prove called before setup finalization");
}

}  // namespace

uint32_t select_dataset(const WitnessSet& w, const std::set<std::string>& att_p) {
  std::vector<uint32_t> order = w.selection;
  std::sort(order.begin(), order.end());
  for (uint32_t i : order) {
    const auto& attrs = w.datasets.at(i).meta.attributes;
    if (std::includes(attrs.begin(), attrs.end(), att_p.begin(), att_p.end())) return i;
  }
  throw zkproofs::ProofAbort("no relevant dataset");
}

ProveResult prove(const CommitmentSet& cs, const WitnessSet& w, std::string_view prompt,
                  const std::set<std::string>& att_p, RandomSource& rng) {
  check_phase(cs);
  if (w.setup_digest != cs.digest()) throw PhaseError("witness set belongs to a different setup");
  uint32_t index = select_dataset(w, att_p);

  ProveResult out;
  out.dataset_index = index;
  out.response = weights::generate_response(prompt);

  zkproofs::ProverWitness pw;
  pw.meta = w.datasets[index].meta;
  pw.sigma = w.datasets[index].sigma;
  pw.accumulator = w.accumulator.get();
  pw.diffs = w.diffs.get();
  pw.chunk_blinds = w.chunk_blinds;
  pw.slot_held = zkproofs::slot_value(w.accumulator->commitment());
  pw.slot_blind = w.slot_blind;
  out.bundle = zkproofs::prove_bundle(cs.statement(), index, pw, att_p, prompt, out.response, rng);
  return out;
}

Verdict verify(const CommitmentSet& cs, const std::set<std::string>& att_p, std::string_view prompt,
               std::string_view response, std::span<const uint8_t> bundle) {
  if (!cs.finalized()) return malformed();
  return zkproofs::verify_bundle_bytes(cs.statement(), att_p, prompt, response, bundle);
}

std::string ResponseFile::to_json() const {
  nlohmann::json j;
  j["prompt"] = prompt;
  j["attributes"] = attributes;
  j["response"] = response;
  j["proof_b64"] = base64_encode(proof);
  j["setup_digest"] = setup_digest;
  return j.dump(2) + "\n";
}

ResponseFile ResponseFile::from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    ResponseFile rf;
    rf.prompt = j.at("prompt").get<std::string>();
    rf.attributes = j.at("attributes").get<std::set<std::string>>();
    rf.response = j.at("response").get<std::string>();
    rf.proof = base64_decode(j.at("proof_b64").get<std::string>());
    rf.setup_digest = j.at("setup_digest").get<std::string>();
    return rf;
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("response.json: ") + e.what());
  }
}

Verdict verify_response(const CommitmentSet& cs, const ResponseFile& rf) {
  if (!cs.finalized() || rf.setup_digest != cs.digest_hex()) return malformed();
  return verify(cs, rf.attributes, rf.prompt, rf.response, rf.proof);
}

}  // namespace zkprov::protocol
