#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zkprov/algebra/curve.h"

namespace zkprov::algebra {

// sum_i scalars[i] * bases[i]. Sizes must match.
G1 msm(std::span<const G1Affine> bases, std::span<const Fr> scalars);
G2 msm(std::span<const G2Affine> bases, std::span<const Fr> scalars);

// Same for small signed integer scalars (quantized weights); the window count
// follows the largest magnitude.
G1 msm_small(std::span<const G1Affine> bases, std::span<const int64_t> scalars);

// Reference double-and-add version, used by tests and tiny inputs.
G1 msm_naive(std::span<const G1Affine> bases, std::span<const Fr> scalars);

// Fixed-base MSM: row w holds 2^{c w} B_i, so every window lands in a single
// bucket pass and no doublings are needed per call. Memory is
// windows * n affine points.
class FixedBaseTable {
 public:
  // window_bits 0 picks the window from the base count.
  explicit FixedBaseTable(std::span<const G1Affine> bases, int window_bits = 0);

  size_t size() const { return n_; }
  int window_bits() const { return c_; }
  // Uses the first scalars.size() bases.
  G1 msm(std::span<const Fr> scalars) const;

 private:
  int c_;
  int windows_;
  size_t n_;
  std::vector<G1Affine> rows_;
};

}  // namespace zkprov::algebra
