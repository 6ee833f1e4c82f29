#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "zkprov/algebra/curve.h"
#include "zkprov/commitments/polynomial.h"
#include "zkprov/common/bytes.h"
#include "zkprov/common/random.h"

namespace zkprov::commitments {

using algebra::G1;
using algebra::G1Affine;
using algebra::G2;
using algebra::G2Affine;

inline constexpr size_t kMaxKzgDegree = size_t{1} << 20;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structured reference string for hiding KZG. The hiding base h = g^gamma
// comes with h^alpha so that blinds can be degree-1 polynomials.
struct KzgParams {
  size_t degree = 0;
  std::vector<G1Affine> powers;  // g^{alpha^i}, i = 0..degree
  G1Affine h;
  G1Affine h_alpha;
  G2Affine g2;
  G2Affine g2_alpha;
  // Trapdoor, kept only when requested for tests.
  std::optional<Fr> debug_alpha;
  std::optional<Fr> debug_gamma;

  Bytes serialize() const;  // "ZKPSRS1" file body with checksum trailer
  static KzgParams deserialize(std::span<const uint8_t> data);
  void save(const std::filesystem::path& path) const;
  static KzgParams load(const std::filesystem::path& path);

  // e(g^{alpha^i}, g2) == e(g^{alpha^{i-1}}, g2^alpha) for every i, and the
  // same for h. check_all runs one pairing pair per index; otherwise a random
  // linear combination is checked.
  bool consistent(bool check_all = false) const;
};

KzgParams kzg_setup(size_t degree, std::span<const uint8_t> seed, bool retain_trapdoor = false);

// Blinding polynomial r0 + r1 X committed under h.
struct KzgBlind {
  Fr r0;
  Fr r1;
  static KzgBlind random(RandomSource& rng) { return {rng.scalar(), rng.scalar()}; }
  static KzgBlind none() { return {Fr::zero(), Fr::zero()}; }
};

struct KzgOpening {
  Fr y;            // f(z)
  G1 proof;        // g^{q(alpha)} h^{r1}
  Fr blind_eval;   // r0 + r1 z
};

// g^{f(alpha)} h^{r0 + r1 alpha}
G1 kzg_commit(const KzgParams& params, const Polynomial& f, const KzgBlind& blind);
KzgOpening kzg_open(const KzgParams& params, const Polynomial& f, const KzgBlind& blind, const Fr& z);
// e(C g^{-y} h^{-blind_eval}, g2) == e(proof, g2^alpha g2^{-z})
bool kzg_verify(const KzgParams& params, const G1& commitment, const Fr& z, const KzgOpening& opening);

}  // namespace zkprov::commitments
