#pragma once

#include <set>
#include <string>
#include <vector>

#include "zkprov/protocol/protocol.h"

namespace zkprov::testing {

inline std::vector<std::string> sample_records(size_t dataset, size_t count) {
  std::vector<std::string> out;
  for (size_t k = 0; k < count; ++k) {
    out.push_back(R"({"question":"Does compound )" + std::to_string(dataset) + "-" + std::to_string(k) +
                  R"( reduce inflammation?","context":"Trial cohort )" + std::to_string(dataset * 100 + k) +
                  R"( showed markers.","answer":"yes"})");
  }
  return out;
}

inline std::set<std::string> default_attributes(size_t i) {
  return {"domain=biomedical", "lang=en", "topic=t" + std::to_string(i)};
}

struct World {
  std::shared_ptr<commitments::KzgParams> srs;
  auth::KeyPair ca;
  std::vector<protocol::AuthenticatedDataset> datasets;
  protocol::CommitmentSet cs;
  protocol::WitnessSet ws;
};

struct WorldConfig {
  size_t datasets = 4;
  std::vector<uint32_t> selection = {0, 1, 2, 3};
  std::vector<std::set<std::string>> attributes;  // defaults when empty
  size_t srs_degree = 16;
  uint64_t seed = 1;
};

inline World make_world(const WorldConfig& cfg, weights::WeightDiffSet diffs) {
  DeterministicRandom rng(cfg.seed);
  auto srs = std::make_shared<commitments::KzgParams>(
      commitments::kzg_setup(cfg.srs_degree, as_bytes("fixture-srs-" + std::to_string(cfg.seed)), true));
  auto ca = auth::KeyPair::generate(rng);
  std::vector<protocol::AuthenticatedDataset> ds;
  for (size_t i = 0; i < cfg.datasets; ++i) {
    protocol::DatasetInput in;
    in.id = "ds" + std::to_string(i);
    in.records = sample_records(i, 3);
    in.attributes = cfg.attributes.empty() ? default_attributes(i) : cfg.attributes.at(i);
    ds.push_back(protocol::authenticate(*srs, ca, in, rng));
  }
  protocol::SetupSession session(srs, ca.public_key());
  for (const auto& d : ds) session.add_dataset(d);
  session.commit_training(cfg.selection, std::move(diffs), rng);
  session.commit_base_model(as_bytes("base-model-manifest"), rng);
  auto res = session.finalize();
  return World{srs, ca, std::move(ds), std::move(res.commitments), std::move(res.witness)};
}

inline weights::WeightDiffSet random_diffs(size_t layers, size_t chunk_length, uint64_t seed) {
  DeterministicRandom rng(seed);
  std::vector<int64_t> v(layers * chunk_length);
  for (auto& x : v) x = static_cast<int64_t>(rng.uniform(1 << 14)) - (1 << 13);
  return weights::make_custom_diffs(layers, std::move(v), seed);
}

}  // namespace zkprov::testing
