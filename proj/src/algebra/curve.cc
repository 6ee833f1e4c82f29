#include "zkprov/algebra/curve.h"

namespace zkprov::algebra {

namespace {

constexpr uint8_t kInfinityFlag = 0x80;
constexpr uint8_t kLargestFlag = 0x40;
constexpr uint8_t kFlagMask = 0xc0;

bool fq2_is_lexicographically_largest(const Fq2& a) {
  if (!a.c1.is_zero()) return fq_is_lexicographically_largest(a.c1);
  return fq_is_lexicographically_largest(a.c0);
}

bool all_zero(std::span<const uint8_t> in) {
  for (uint8_t b : in) {
    if (b != 0) return false;
  }
  return true;
}

}  // namespace

const Fq2& G2Curve::b() {
  static const Fq2 value = [] {
    Fq2 xi{Fq::from_u64(9), Fq::one()};
    return Fq2{Fq::from_u64(3), Fq::zero()} * xi.inverse();
  }();
  return value;
}

const G1Affine& g1_generator() {
  static const G1Affine g{Fq::from_u64(1), Fq::from_u64(2), false};
  return g;
}

const G2Affine& g2_generator() {
  static const G2Affine g{
      Fq2{Fq::from_canonical_unchecked({0x46debd5cd992f6edULL, 0x674322d4f75edaddULL,
                                        0x426a00665e5c4479ULL, 0x1800deef121f1e76ULL}),
          Fq::from_canonical_unchecked({0x97e485b7aef312c2ULL, 0xf1aa493335a9e712ULL,
                                        0x7260bfb731fb5d25ULL, 0x198e9393920d483aULL})},
      Fq2{Fq::from_canonical_unchecked({0x4ce6cc0166fa7daaULL, 0xe3d1e7690c43d37bULL,
                                        0x4aab71808dcb408fULL, 0x12c85ea5db8c6debULL}),
          Fq::from_canonical_unchecked({0x55acdadcd122975bULL, 0xbc4b313370b38ef3ULL,
                                        0xec9e99ad690c3395ULL, 0x090689d0585ff075ULL})},
      false};
  return g;
}

bool g2_in_subgroup(const G2& p) { return p.mul_limbs(group_order()).is_identity(); }

std::array<uint8_t, kG1Bytes> g1_to_bytes(const G1& p) {
  std::array<uint8_t, kG1Bytes> out{};
  if (p.is_identity()) {
    out[31] = kInfinityFlag;
    return out;
  }
  G1Affine a = p.to_affine();
  a.x.write_le(out);
  if (fq_is_lexicographically_largest(a.y)) out[31] |= kLargestFlag;
  return out;
}

G1 g1_from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kG1Bytes) throw EncodingError("G1 encoding must be 32 bytes");
  std::array<uint8_t, kG1Bytes> buf{};
  std::copy(in.begin(), in.end(), buf.begin());
  uint8_t flags = buf[31] & kFlagMask;
  buf[31] &= static_cast<uint8_t>(~kFlagMask);
  if (flags & kInfinityFlag) {
    if (flags != kInfinityFlag || !all_zero(buf)) throw EncodingError("non-canonical G1 infinity");
    return G1::identity();
  }
  Fq x = Fq::from_bytes_le(buf);
  Fq y;
  if (!fq_sqrt(x.square() * x + G1Curve::b(), y)) throw EncodingError("G1 point not on curve");
  if (fq_is_lexicographically_largest(y) != ((flags & kLargestFlag) != 0)) y = -y;
  // G1 has cofactor 1, so every curve point is in the subgroup.
  return G1(G1Affine{x, y, false});
}

std::array<uint8_t, kG2Bytes> g2_to_bytes(const G2& p) {
  std::array<uint8_t, kG2Bytes> out{};
  if (p.is_identity()) {
    out[63] = kInfinityFlag;
    return out;
  }
  G2Affine a = p.to_affine();
  a.x.c0.write_le(std::span<uint8_t>(out.data(), 32));
  a.x.c1.write_le(std::span<uint8_t>(out.data() + 32, 32));
  if (fq2_is_lexicographically_largest(a.y)) out[63] |= kLargestFlag;
  return out;
}

G2 g2_from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kG2Bytes) throw EncodingError("G2 encoding must be 64 bytes");
  std::array<uint8_t, kG2Bytes> buf{};
  std::copy(in.begin(), in.end(), buf.begin());
  uint8_t flags = buf[63] & kFlagMask;
  buf[63] &= static_cast<uint8_t>(~kFlagMask);
  if (flags & kInfinityFlag) {
    if (flags != kInfinityFlag || !all_zero(buf)) throw EncodingError("non-canonical G2 infinity");
    return G2::identity();
  }
  Fq2 x{Fq::from_bytes_le(std::span<const uint8_t>(buf.data(), 32)),
        Fq::from_bytes_le(std::span<const uint8_t>(buf.data() + 32, 32))};
  Fq2 y;
  if (!fq2_sqrt(x.square() * x + G2Curve::b(), y)) throw EncodingError("G2 point not on curve");
  if (fq2_is_lexicographically_largest(y) != ((flags & kLargestFlag) != 0)) y = -y;
  G2 p(G2Affine{x, y, false});
  if (!g2_in_subgroup(p)) throw EncodingError("G2 point not in prime-order subgroup");
  return p;
}

}  // namespace zkprov::algebra
