#include "zkprov/commitments/kzg.h"

#include "zkprov/algebra/hash.h"
#include "zkprov/algebra/msm.h"
#include "zkprov/algebra/pairing.h"
#include "zkprov/common/io.h"
#include "zkprov/common/parallel.h"

namespace zkprov::commitments {

namespace {

constexpr std::string_view kSrsMagic = "ZKPSRS1";

G1 commit_coeffs(const KzgParams& params, std::span<const Fr> coeffs) {
  if (coeffs.size() > params.powers.size()) throw ParameterError("polynomial degree exceeds SRS degree");
  return algebra::msm(std::span<const G1Affine>(params.powers).first(coeffs.size()), coeffs);
}

}  // namespace

KzgParams kzg_setup(size_t degree, std::span<const uint8_t> seed, bool retain_trapdoor) {
  if (degree == 0 || degree > kMaxKzgDegree) throw ParameterError("KZG degree must be in [1, 2^20]");
  auto key = algebra::sha256(seed);
  DeterministicRandom rng(key);
  Fr alpha = rng.nonzero_scalar();
  Fr gamma = rng.nonzero_scalar();

  std::vector<Fr> exps(degree + 1);
  exps[0] = Fr::one();
  for (size_t i = 1; i <= degree; ++i) exps[i] = exps[i - 1] * alpha;
  std::vector<G1> pts(degree + 1);
  const G1 g(algebra::g1_generator());
  parallel_for(pts.size(), [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) pts[i] = g.mul(exps[i]);
  }, 64);

  KzgParams p;
  p.degree = degree;
  p.powers = G1::batch_to_affine(pts);
  G1 h = g.mul(gamma);
  p.h = h.to_affine();
  p.h_alpha = h.mul(alpha).to_affine();
  p.g2 = algebra::g2_generator();
  p.g2_alpha = G2(p.g2).mul(alpha).to_affine();
  if (retain_trapdoor) {
    p.debug_alpha = alpha;
    p.debug_gamma = gamma;
  }
  return p;
}

bool KzgParams::consistent(bool check_all) const {
  using algebra::pairing;
  if (powers.size() != degree + 1 || degree == 0) return false;
  if (!(powers[0] == algebra::g1_generator()) || !(g2 == algebra::g2_generator())) return false;
  if (pairing(h_alpha, g2) != pairing(h, g2_alpha)) return false;
  if (check_all) {
    for (size_t i = 1; i <= degree; ++i) {
      if (pairing(powers[i], g2) != pairing(powers[i - 1], g2_alpha)) return false;
    }
    return true;
  }
  // sum rho^i P_i against sum rho^i P_{i-1}; a bad index survives with
  // probability at most degree / p.
  OsRandom rng;
  Fr rho = rng.nonzero_scalar();
  std::vector<Fr> w(degree);
  Fr acc = Fr::one();
  for (auto& x : w) {
    x = acc;
    acc = acc * rho;
  }
  std::span<const G1Affine> all(powers);
  G1 hi = algebra::msm(all.subspan(1), w);
  G1 lo = algebra::msm(all.first(degree), w);
  std::pair<G1, G2> pairs[] = {{hi, G2(g2)}, {-lo, G2(g2_alpha)}};
  return algebra::multi_pairing(pairs).is_identity();
}

G1 kzg_commit(const KzgParams& params, const Polynomial& f, const KzgBlind& blind) {
  G1 c = commit_coeffs(params, f.coeffs());
  return c + G1(params.h).mul(blind.r0) + G1(params.h_alpha).mul(blind.r1);
}

KzgOpening kzg_open(const KzgParams& params, const Polynomial& f, const KzgBlind& blind, const Fr& z) {
  if (f.degree() > static_cast<int>(params.degree)) throw ParameterError("polynomial degree exceeds SRS degree");
  KzgOpening o;
  o.y = f.evaluate(z);
  o.proof = commit_coeffs(params, f.quotient_at(z).coeffs()) + G1(params.h).mul(blind.r1);
  o.blind_eval = blind.r0 + blind.r1 * z;
  return o;
}

bool kzg_verify(const KzgParams& params, const G1& commitment, const Fr& z, const KzgOpening& opening) {
  G1 lhs = commitment - G1(params.powers[0]).mul(opening.y) - G1(params.h).mul(opening.blind_eval);
  G2 shifted = G2(params.g2_alpha) - G2(params.g2).mul(z);
  std::pair<G1, G2> pairs[] = {{lhs, G2(params.g2)}, {-opening.proof, shifted}};
  return algebra::multi_pairing(pairs).is_identity();
}

Bytes KzgParams::serialize() const {
  ByteWriter w;
  w.raw(kSrsMagic);
  w.u32(static_cast<uint32_t>(degree));
  for (const auto& p : powers) w.raw(algebra::g1_to_bytes(p));
  w.raw(algebra::g1_to_bytes(h));
  w.raw(algebra::g1_to_bytes(h_alpha));
  w.raw(algebra::g2_to_bytes(g2));
  w.raw(algebra::g2_to_bytes(g2_alpha));
  return seal(std::move(w));
}

KzgParams KzgParams::deserialize(std::span<const uint8_t> data) {
  ByteReader r(unseal(data));
  auto magic = r.take(kSrsMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kSrsMagic.begin())) throw DecodeError("bad SRS magic");
  KzgParams p;
  p.degree = r.u32();
  if (p.degree == 0 || p.degree > kMaxKzgDegree) throw DecodeError("SRS degree out of range");
  if (r.remaining() != (p.degree + 3) * algebra::kG1Bytes + 2 * algebra::kG2Bytes)
    throw DecodeError("SRS length mismatch");
  p.powers.resize(p.degree + 1);
  for (auto& pt : p.powers) pt = algebra::g1_from_bytes(r.take(algebra::kG1Bytes)).to_affine();
  p.h = algebra::g1_from_bytes(r.take(algebra::kG1Bytes)).to_affine();
  p.h_alpha = algebra::g1_from_bytes(r.take(algebra::kG1Bytes)).to_affine();
  p.g2 = algebra::g2_from_bytes(r.take(algebra::kG2Bytes)).to_affine();
  p.g2_alpha = algebra::g2_from_bytes(r.take(algebra::kG2Bytes)).to_affine();
  r.expect_end();
  return p;
}

void KzgParams::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

KzgParams KzgParams::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

}  // namespace zkprov::commitments
