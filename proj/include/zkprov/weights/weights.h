#pragma once

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "zkprov/algebra/curve.h"
#include "zkprov/algebra/hash.h"
#include "zkprov/common/bytes.h"
#include "zkprov/common/random.h"

namespace zkprov::weights {

using algebra::Fr;
using algebra::G1;

inline constexpr int kQuantBits = 16;
inline constexpr int64_t kQuantScale = int64_t{1} << kQuantBits;
// Quantized magnitudes must stay below 2^34.
inline constexpr int64_t kQuantLimit = int64_t{1} << 34;

// Round-half-even fixed point at scale 2^16. Throws std::out_of_range when the
// result would reach kQuantLimit or x is not finite.
int64_t quantize(double x);
double dequantize(int64_t q);
// q >= 0 maps to q, q < 0 to p - |q|.
Fr encode(int64_t q);
// Inverse of encode; throws DecodeError for elements outside (-2^34, 2^34).
int64_t decode(const Fr& x);

enum class Profile { k1B, k8B };

struct SamplingEntry {
  size_t elements;
  size_t layers;
};

Profile parse_profile(std::string_view name);  // "1b" / "8b", case-insensitive
std::string profile_name(Profile p);
// Parameter counts of the sampled query projection per percent in {10..50}.
SamplingEntry sampling_entry(Profile p, int percent);

class WeightDiffSet {
 public:
  // values holds exactly `total` quantized entries; chunks are padded on demand.
  WeightDiffSet(std::string model_id, int percent, uint64_t seed, size_t layers, std::vector<int64_t> values);

  const std::string& model_id() const { return model_id_; }
  int percent() const { return percent_; }
  uint64_t seed() const { return seed_; }
  size_t layers() const { return layers_; }
  size_t chunk_length() const { return chunk_len_; }
  size_t total() const { return total_; }
  // Chunk j (0-based) of length chunk_length(), zero padded.
  std::span<const int64_t> chunk(size_t j) const;
  std::span<const int64_t> padded() const { return values_; }
  // Unpadded entries.
  std::span<const int64_t> values() const { return std::span<const int64_t>(values_).first(total_); }

  // Returns a copy with padded element `index` replaced.
  WeightDiffSet with_element(size_t index, int64_t q) const;

  // "ZKPWD1" file.
  Bytes serialize() const;
  static WeightDiffSet deserialize(std::span<const uint8_t> data);
  void save(const std::filesystem::path& path) const;
  static WeightDiffSet load(const std::filesystem::path& path);

  friend bool operator==(const WeightDiffSet&, const WeightDiffSet&) = default;

 private:
  std::string model_id_;
  int percent_;
  uint64_t seed_;
  size_t layers_;
  size_t chunk_len_;
  size_t total_;
  std::vector<int64_t> values_;  // layers_ * chunk_len_
};

WeightDiffSet synthesize_weight_diffs(Profile profile, int percent, uint64_t seed);
// Small sets for tests and demos; model_id "custom" skips the table check.
WeightDiffSet make_custom_diffs(size_t layers, std::vector<int64_t> values, uint64_t seed = 0);

struct SeedInputs {
  Fr c_m;
  algebra::Digest c_sigma;
  std::vector<G1> c_delta_w;  // per-chunk commitments followed by the slot
  G1 c_w0;
  std::set<std::string> attributes;
  std::string prompt;
  std::string response;
};

Bytes encode_seed_inputs(const SeedInputs& in);
Fr derive_seed(const SeedInputs& in);

// v_{j,k} = hash_to_field(seed || u32 j || u32 k, kappa_1), j 1-based, k 0-based.
std::vector<Fr> derive_challenge_vector(const Fr& seed, uint32_t j, size_t length);

struct BindingValues {
  std::vector<Fr> b;
};

// B_j = <chunk_j, v_j>; challenges[j] is v_{j+1}.
BindingValues compute_binding_values(const WeightDiffSet& w, const std::vector<std::vector<Fr>>& challenges);
Fr inner_product(std::span<const int64_t> w, std::span<const Fr> v);

// Deterministic stand-in for model inference.
std::string generate_response(std::string_view prompt);

}  // namespace zkprov::weights
