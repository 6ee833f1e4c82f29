#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>

#include "zkprov/algebra/field.h"

namespace zkprov {

class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<uint8_t> out) = 0;

  uint64_t next_u64();
  // Uniform in [0, bound); bound > 0.
  uint64_t uniform(uint64_t bound);
  // Uniform scalar by rejection sampling on 254-bit strings.
  algebra::Fr scalar();
  algebra::Fr nonzero_scalar();
};

// Operating-system entropy (OpenSSL RAND_bytes).
class OsRandom final : public RandomSource {
 public:
  void fill(std::span<uint8_t> out) override;
};

// ChaCha20 keystream under a 32-byte key; reproducible across runs.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(uint64_t seed);
  explicit DeterministicRandom(std::span<const uint8_t, 32> key);
  ~DeterministicRandom() override;
  DeterministicRandom(const DeterministicRandom&) = delete;
  DeterministicRandom& operator=(const DeterministicRandom&) = delete;

  void fill(std::span<uint8_t> out) override;

 private:
  void init(std::span<const uint8_t, 32> key);
  struct Ctx;
  std::unique_ptr<Ctx> ctx_;
};

}  // namespace zkprov
