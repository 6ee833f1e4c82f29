#include "zkprov/algebra/tower.h"

#include <algorithm>

namespace zkprov::algebra {

namespace {

// Little-endian limbs of (m - sub) / div; the caller guarantees exactness.
Limbs exact_div(Limbs m, uint64_t sub, uint64_t div) {
  Limbs s{sub, 0, 0, 0};
  detail::limbs_sub(m, s);
  Limbs out{};
  unsigned __int128 rem = 0;
  for (int i = 3; i >= 0; --i) {
    unsigned __int128 cur = (rem << 64) | m[i];
    out[i] = static_cast<uint64_t>(cur / div);
    rem = cur % div;
  }
  return out;
}

Limbs add_small(Limbs m, uint64_t add) {
  Limbs a{add, 0, 0, 0};
  detail::limbs_add(m, a);
  return m;
}

Limbs shr2(Limbs m) {
  Limbs out{};
  for (int i = 0; i < 4; ++i) {
    out[i] = m[i] >> 2;
    if (i < 3) out[i] |= m[i + 1] << 62;
  }
  return out;
}

struct FrobeniusTable {
  // gamma[i] = xi^{i (q - 1) / 6}
  std::array<Fq2, 6> gamma;
  FrobeniusTable() {
    Fq2 xi{Fq::from_u64(9), Fq::one()};
    Fq2 base = xi.pow(exact_div(Fq::modulus(), 1, 6));
    gamma[0] = Fq2::one();
    for (size_t i = 1; i < 6; ++i) gamma[i] = gamma[i - 1] * base;
  }
};

const FrobeniusTable& frobenius_table() {
  static const FrobeniusTable table;
  return table;
}

}  // namespace

bool fq_sqrt(const Fq& a, Fq& out) {
  static const Limbs kExp = shr2(add_small(Fq::modulus(), 1));  // (q + 1) / 4
  Fq r = a.pow(kExp);
  if (r.square() != a) return false;
  out = r;
  return true;
}

bool fq_is_lexicographically_largest(const Fq& a) {
  static const Limbs kHalf = exact_div(Fq::modulus(), 1, 2);
  return detail::limbs_less(kHalf, a.to_canonical());
}

bool fq2_sqrt(const Fq2& a, Fq2& out) {
  if (a.is_zero()) {
    out = Fq2::zero();
    return true;
  }
  static const Limbs kExp34 = exact_div(Fq::modulus(), 3, 4);  // (q - 3) / 4
  static const Limbs kExp12 = exact_div(Fq::modulus(), 1, 2);  // (q - 1) / 2
  Fq2 a1 = a.pow(kExp34);
  Fq2 alpha = a1 * (a1 * a);
  Fq2 a0 = alpha.conjugate() * alpha;
  Fq2 minus_one = -Fq2::one();
  if (a0 == minus_one) return false;
  Fq2 x0 = a1 * a;
  Fq2 x;
  if (alpha == minus_one) {
    x = Fq2{-x0.c1, x0.c0};  // u * x0
  } else {
    Fq2 b = (Fq2::one() + alpha).pow(kExp12);
    x = b * x0;
  }
  if (x.square() != a) return false;
  out = x;
  return true;
}

Fq12 Fq12::frobenius() const {
  const auto& g = frobenius_table().gamma;
  // Basis mapping: c0.c0 ~ w^0, c1.c0 ~ w^1, c0.c1 ~ w^2, c1.c1 ~ w^3,
  // c0.c2 ~ w^4, c1.c2 ~ w^5.
  Fq12 r;
  r.c0.c0 = c0.c0.conjugate() * g[0];
  r.c1.c0 = c1.c0.conjugate() * g[1];
  r.c0.c1 = c0.c1.conjugate() * g[2];
  r.c1.c1 = c1.c1.conjugate() * g[3];
  r.c0.c2 = c0.c2.conjugate() * g[4];
  r.c1.c2 = c1.c2.conjugate() * g[5];
  return r;
}

std::array<uint8_t, Fq12::kBytes> Fq12::to_bytes() const {
  std::array<uint8_t, kBytes> out{};
  const Fq* coeffs[12] = {&c0.c0.c0, &c0.c0.c1, &c0.c1.c0, &c0.c1.c1, &c0.c2.c0, &c0.c2.c1,
                          &c1.c0.c0, &c1.c0.c1, &c1.c1.c0, &c1.c1.c1, &c1.c2.c0, &c1.c2.c1};
  for (size_t i = 0; i < 12; ++i) {
    coeffs[i]->write_le(std::span<uint8_t>(out.data() + 32 * i, 32));
  }
  return out;
}

Fq12 Fq12::from_bytes(std::span<const uint8_t> in) {
  if (in.size() != kBytes) throw EncodingError("GT element must be 384 bytes");
  Fq12 r;
  Fq* coeffs[12] = {&r.c0.c0.c0, &r.c0.c0.c1, &r.c0.c1.c0, &r.c0.c1.c1, &r.c0.c2.c0, &r.c0.c2.c1,
                    &r.c1.c0.c0, &r.c1.c0.c1, &r.c1.c1.c0, &r.c1.c1.c1, &r.c1.c2.c0, &r.c1.c2.c1};
  for (size_t i = 0; i < 12; ++i) *coeffs[i] = Fq::from_bytes_le(in.subspan(32 * i, 32));
  return r;
}

}  // namespace zkprov::algebra
