#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zkprov/protocol/protocol.h"

namespace zkprov::bench {

struct Stats {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single run
  static Stats of(const std::vector<double>& xs);
};

struct BenchConfig {
  weights::Profile profile = weights::Profile::k1B;
  int percent = 10;
  int reps = 20;
  uint64_t seed = 42;
};

struct BenchRecord {
  std::string model_profile;
  int percent = 0;
  size_t layers = 0;  // N
  size_t element_count = 0;
  int repetitions = 0;
  Stats t_prove_ms;
  Stats t_verify_ms;
  Stats t_stub_inference_ms;
  double t_setup_ms = 0;  // one-time, excluded from the per-query figures
  size_t proof_bytes = 0;
  bool all_accepted = true;
};

struct ScalingRatio {
  std::string model_profile;
  double ratio;  // t_prove(50%) / t_prove(10%)
};

struct CrossProfile {
  size_t element_count;
  std::string a;  // "1b@40"
  std::string b;  // "8b@10"
  double t_a_ms;
  double t_b_ms;
  double deviation;  // |t_a - t_b| / min(t_a, t_b)
};

struct Checks {
  std::vector<ScalingRatio> scaling;
  std::vector<CrossProfile> cross_profile;
};

// Four datasets of three question/answer records each, with attribute sets.
std::vector<protocol::DatasetInput> sample_corpus();

using Logger = std::function<void(const std::string&)>;

// Setup once, then `reps` rounds of stub inference, prove (with serialization)
// and verify (with deserialization).
BenchRecord run_config(const BenchConfig& cfg, const Logger& log = {});
Checks compute_checks(const std::vector<BenchRecord>& records);

std::vector<std::string> csv_columns();
std::string to_csv(const std::vector<BenchRecord>& records);
std::string to_json(const std::vector<BenchRecord>& records, const Checks& checks);

}  // namespace zkprov::bench
