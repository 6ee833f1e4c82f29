#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "zkprov/algebra/curve.h"
#include "zkprov/algebra/field.h"
#include "zkprov/algebra/msm.h"

namespace zkprov::commitments {

using algebra::Fr;
using algebra::G1;
using algebra::G1Affine;

// Independent generators g_0..g_{n-1} of one named family, plus the blinding
// base H shared by every family. All points come from hash_to_g1, so nobody
// knows discrete logs between them.
class PedersenKey {
 public:
  // Process-wide cache; families grow on demand and never shrink.
  static std::shared_ptr<const PedersenKey> get(const std::string& family, size_t count);

  const std::string& family() const { return family_; }
  size_t size() const { return g_.size(); }
  std::span<const G1Affine> generators() const { return g_; }
  const G1Affine& generator(size_t i) const { return g_.at(i); }
  const G1Affine& h() const { return h_; }

  static const G1Affine& blinding_base();

  // Fixed-base table over the generators, built on first call and kept for the lifetime of the key.
  const algebra::FixedBaseTable& table() const;
  // <s, g[0..|s|)> through the table when it has been built, plain Pippenger otherwise.
  G1 msm(std::span<const Fr> scalars) const;

  PedersenKey(std::string family, std::vector<G1Affine> g);

 private:
  std::string family_;
  std::vector<G1Affine> g_;
  G1Affine h_;
  mutable std::once_flag table_once_;
  mutable std::unique_ptr<algebra::FixedBaseTable> table_;
  mutable std::atomic<bool> table_ready_{false};
};

// sum v_k g_k + r H; |v| <= key size.
G1 pedersen_commit(const PedersenKey& key, std::span<const Fr> v, const Fr& blind);
// Same for small signed integers (quantized weights).
G1 pedersen_commit_small(const PedersenKey& key, std::span<const int64_t> v, const Fr& blind);

}  // namespace zkprov::commitments
