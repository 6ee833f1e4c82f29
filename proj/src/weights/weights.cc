#include "zkprov/weights/weights.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "zkprov/common/io.h"
#include "zkprov/common/parallel.h"

namespace zkprov::weights {

namespace {

constexpr std::string_view kMagic = "ZKPWD1";
constexpr uint32_t kVersion = 1;
constexpr std::string_view kCustomModel = "custom";

// Sampled query-projection parameter counts, percent 10..50.
constexpr size_t kCounts1B[5] = {419430, 838860, 1258291, 1677721, 2097152};
constexpr size_t kCounts8B[5] = {1677721, 3355443, 5033164, 6710886, 8388608};
constexpr size_t kLayers[5] = {8, 16, 24, 32, 40};

size_t percent_index(int percent) {
  if (percent < 10 || percent > 50 || percent % 10 != 0) {
    throw std::invalid_argument("sampling percent must be one of 10, 20, 30, 40, 50");
  }
  return static_cast<size_t>(percent / 10 - 1);
}

void check_table(const std::string& model_id, int percent, size_t layers, size_t total) {
  if (model_id == kCustomModel) return;
  auto e = sampling_entry(parse_profile(model_id), percent);
  if (e.layers != layers || e.elements != total) {
    throw DecodeError("layer or element count does not match the sampling table for " + model_id);
  }
}

}  // namespace

int64_t quantize(double x) {
  if (!std::isfinite(x)) throw std::out_of_range("quantize: non-finite value");
  double s = x * static_cast<double>(kQuantScale);  // exact: power-of-two scale
  double f = std::floor(s);
  double frac = s - f;
  if (frac > 0.5 || (frac == 0.5 && std::fmod(f, 2.0) != 0.0)) f += 1.0;
  if (std::fabs(f) >= static_cast<double>(kQuantLimit)) throw std::out_of_range("quantize: value too large");
  return static_cast<int64_t>(f);
}

double dequantize(int64_t q) { return static_cast<double>(q) / static_cast<double>(kQuantScale); }

Fr encode(int64_t q) { return Fr::from_i64(q); }

int64_t decode(const Fr& x) {
  auto c = x.to_canonical();
  if (c[1] == 0 && c[2] == 0 && c[3] == 0 && c[0] < static_cast<uint64_t>(kQuantLimit)) {
    return static_cast<int64_t>(c[0]);
  }
  auto n = (-x).to_canonical();
  if (n[1] == 0 && n[2] == 0 && n[3] == 0 && n[0] < static_cast<uint64_t>(kQuantLimit)) {
    return -static_cast<int64_t>(n[0]);
  }
  throw DecodeError("weight element outside the quantized range");
}

Profile parse_profile(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1b") return Profile::k1B;
  if (s == "8b") return Profile::k8B;
  throw std::invalid_argument("unknown model profile: " + std::string(name));
}

std::string profile_name(Profile p) { return p == Profile::k1B ? "1b" : "8b"; }

SamplingEntry sampling_entry(Profile p, int percent) {
  size_t i = percent_index(percent);
  return {p == Profile::k1B ? kCounts1B[i] : kCounts8B[i], kLayers[i]};
}

WeightDiffSet::WeightDiffSet(std::string model_id, int percent, uint64_t seed, size_t layers,
                             std::vector<int64_t> values)
    : model_id_(std::move(model_id)), percent_(percent), seed_(seed), layers_(layers), total_(values.size()) {
  percent_index(percent);
  if (layers == 0) throw std::invalid_argument("at least one proof layer is required");
  if (values.empty()) throw std::invalid_argument("weight diff set is empty");
  for (int64_t q : values) {
    if (q <= -kQuantLimit || q >= kQuantLimit) throw std::out_of_range("quantized weight out of range");
  }
  chunk_len_ = (total_ + layers - 1) / layers;
  values_ = std::move(values);
  values_.resize(layers_ * chunk_len_, 0);
}

std::span<const int64_t> WeightDiffSet::chunk(size_t j) const {
  if (j >= layers_) throw std::out_of_range("chunk index");
  return std::span<const int64_t>(values_).subspan(j * chunk_len_, chunk_len_);
}

WeightDiffSet WeightDiffSet::with_element(size_t index, int64_t q) const {
  WeightDiffSet copy = *this;
  copy.values_.at(index) = q;
  return copy;
}

Bytes WeightDiffSet::serialize() const {
  ByteWriter w;
  w.reserve(64 + model_id_.size() + total_ * 32 + 32);
  w.raw(kMagic);
  w.u32(kVersion);
  w.str(model_id_);
  w.u32(static_cast<uint32_t>(percent_));
  w.u64(seed_);
  w.u32(static_cast<uint32_t>(layers_));
  w.u64(chunk_len_);
  w.u64(total_);
  for (size_t i = 0; i < total_; ++i) w.raw(encode(values_[i]).to_bytes_le());
  return seal(std::move(w));
}

WeightDiffSet WeightDiffSet::deserialize(std::span<const uint8_t> data) {
  auto body = unseal(data);
  ByteReader r(body);
  auto magic = r.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw DecodeError("bad weight diff magic");
  if (r.u32() != kVersion) throw DecodeError("unsupported weight diff version");
  std::string model_id = r.str();
  int percent = static_cast<int>(r.u32());
  uint64_t seed = r.u64();
  size_t layers = r.u32();
  uint64_t chunk_len = r.u64();
  uint64_t total = r.u64();
  if (layers == 0 || total == 0) throw DecodeError("empty weight diff header");
  if (chunk_len != (total + layers - 1) / layers) throw DecodeError("chunk length does not match header");
  if (r.remaining() != total * 32) throw DecodeError("element count does not match header");
  try {
    percent_index(percent);
    check_table(model_id, percent, layers, total);
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  }
  std::vector<int64_t> values(total);
  parallel_for(total, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) {
      auto bytes = body.subspan(r.position() + i * 32, 32);
      try {
        values[i] = decode(Fr::from_bytes_le(bytes));
      } catch (const algebra::EncodingError&) {
        throw DecodeError("non-canonical field element in weight diffs");
      }
    }
  }, 4096);
  return WeightDiffSet(std::move(model_id), percent, seed, layers, std::move(values));
}

void WeightDiffSet::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

WeightDiffSet WeightDiffSet::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

WeightDiffSet synthesize_weight_diffs(Profile profile, int percent, uint64_t seed) {
  auto entry = sampling_entry(profile, percent);
  ByteWriter key;
  key.str("weights/" + profile_name(profile));
  key.u32(static_cast<uint32_t>(percent));
  key.u64(seed);
  DeterministicRandom rng(algebra::sha256(key.bytes()));
  // Nonzero LoRA-scale deltas in [-1/16, 1/16].
  constexpr uint64_t kSpan = 1 << 12;
  std::vector<int64_t> values(entry.elements);
  for (auto& v : values) {
    int64_t q = static_cast<int64_t>(rng.uniform(2 * kSpan)) - static_cast<int64_t>(kSpan);
    v = q >= 0 ? q + 1 : q;
  }
  return WeightDiffSet(profile_name(profile), percent, seed, entry.layers, std::move(values));
}

WeightDiffSet make_custom_diffs(size_t layers, std::vector<int64_t> values, uint64_t seed) {
  return WeightDiffSet(std::string(kCustomModel), 10, seed, layers, std::move(values));
}

Bytes encode_seed_inputs(const SeedInputs& in) {
  ByteWriter w;
  w.raw(in.c_m.to_bytes_le());
  w.raw(in.c_sigma);
  w.u32(static_cast<uint32_t>(in.c_delta_w.size()));
  for (const auto& c : in.c_delta_w) w.raw(algebra::g1_to_bytes(c));
  w.raw(algebra::g1_to_bytes(in.c_w0));
  w.u32(static_cast<uint32_t>(in.attributes.size()));
  for (const auto& a : in.attributes) w.str(a);  // std::set iterates in sorted order
  w.str(in.prompt);
  w.str(in.response);
  return w.take();
}

Fr derive_seed(const SeedInputs& in) { return algebra::hash_to_field(encode_seed_inputs(in), algebra::kKappaSeed); }

std::vector<Fr> derive_challenge_vector(const Fr& seed, uint32_t j, size_t length) {
  if (j == 0) throw std::invalid_argument("layer index is 1-based");
  std::vector<Fr> v(length);
  auto seed_bytes = seed.to_bytes_le();
  parallel_for(length, [&](size_t b, size_t e) {
    std::array<uint8_t, 40> msg{};
    std::copy(seed_bytes.begin(), seed_bytes.end(), msg.begin());
    for (int i = 0; i < 4; ++i) msg[32 + i] = static_cast<uint8_t>(j >> (8 * i));
    for (size_t k = b; k < e; ++k) {
      for (int i = 0; i < 4; ++i) msg[36 + i] = static_cast<uint8_t>(k >> (8 * i));
      v[k] = algebra::hash_to_field(msg, algebra::kKappaChallenge);
    }
  }, 2048);
  return v;
}

Fr inner_product(std::span<const int64_t> w, std::span<const Fr> v) {
  if (w.size() != v.size()) throw std::invalid_argument("inner product: length mismatch");
  Fr acc;
  for (size_t k = 0; k < w.size(); ++k) {
    if (w[k] != 0) acc += encode(w[k]) * v[k];
  }
  return acc;
}

BindingValues compute_binding_values(const WeightDiffSet& w, const std::vector<std::vector<Fr>>& challenges) {
  if (challenges.size() != w.layers()) throw std::invalid_argument("one challenge vector per layer required");
  BindingValues out;
  out.b.resize(w.layers());
  parallel_for(w.layers(), [&](size_t b, size_t e) {
    for (size_t j = b; j < e; ++j) out.b[j] = inner_product(w.chunk(j), challenges[j]);
  });
  return out;
}

std::string generate_response(std::string_view prompt) {
  auto d = algebra::sha256(prompt);
  return "[stub " + to_hex(std::span<const uint8_t>(d.data(), 8)) + "] Answer withheld: model inference is not run.";
}

}  // namespace zkprov::weights
