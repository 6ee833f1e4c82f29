#include "zkprov/algebra/pairing.h"

#include <vector>

namespace zkprov::algebra {

namespace {

// 6x + 2 for the BN254 parameter x = 4965661367192848881.
constexpr std::array<uint64_t, 2> kAteLoopCount{0x9d797039be763ba8ULL, 0x1ULL};
constexpr int kAteLoopTopBit = 64;

// (q^4 - q^2 + 1) / r
constexpr std::array<uint64_t, 12> kHardExponent{
    0xe81bb482ccdf42b1ULL, 0x5abf5cc4f49c36d4ULL, 0xf1154e7e1da014fdULL, 0xdcc7b44c87cdbacfULL,
    0xaaa441e3954bcf8aULL, 0x6b887d56d5095f23ULL, 0x79581e16f3fd90c6ULL, 0x3b1b1355d189227dULL,
    0x4e529a5861876f6bULL, 0x6c0eb522d5b12278ULL, 0x331ec15183177fafULL, 0x01baaa710b0759adULL};

struct TwistFrobenius {
  Fq2 gamma_x;  // xi^{(q-1)/3}
  Fq2 gamma_y;  // xi^{(q-1)/2}
  TwistFrobenius() {
    Fq12 w2;
    // gamma values fall out of the Fq12 Frobenius applied to w^2 and w^3.
    w2.c0.c1 = Fq2::one();
    Fq12 w3;
    w3.c1.c1 = Fq2::one();
    gamma_x = w2.frobenius().c0.c1;
    gamma_y = w3.frobenius().c1.c1;
  }
};

const TwistFrobenius& twist_frobenius() {
  static const TwistFrobenius t;
  return t;
}

G2Affine frobenius_twist(const G2Affine& q) {
  const auto& t = twist_frobenius();
  return G2Affine{q.x.conjugate() * t.gamma_x, q.y.conjugate() * t.gamma_y, false};
}

// Line through T with slope lambda, evaluated at P, embedded in Fq12:
//   y_P - lambda x_P w + (lambda x_T - y_T) w^3
Fq12 line_value(const Fq2& lambda, const Fq2& xt, const Fq2& yt, const G1Affine& p) {
  Fq12 l;
  l.c0.c0 = Fq2{p.y, Fq::zero()};
  l.c1.c0 = -lambda.scale(p.x);
  l.c1.c1 = lambda * xt - yt;
  return l;
}

// Doubles t in place and returns the tangent line at P.
Fq12 double_step(G2Affine& t, const G1Affine& p) {
  Fq2 x2 = t.x.square();
  Fq2 lambda = (x2.dbl() + x2) * t.y.dbl().inverse();
  Fq12 l = line_value(lambda, t.x, t.y, p);
  Fq2 nx = lambda.square() - t.x.dbl();
  Fq2 ny = lambda * (t.x - nx) - t.y;
  t.x = nx;
  t.y = ny;
  return l;
}

// Sets t = t + q and returns the chord line at P.
Fq12 add_step(G2Affine& t, const G2Affine& q, const G1Affine& p) {
  Fq2 lambda = (q.y - t.y) * (q.x - t.x).inverse();
  Fq12 l = line_value(lambda, t.x, t.y, p);
  Fq2 nx = lambda.square() - t.x - q.x;
  Fq2 ny = lambda * (t.x - nx) - t.y;
  t.x = nx;
  t.y = ny;
  return l;
}

}  // namespace

Fq12 miller_loop(const G1Affine& p, const G2Affine& q) {
  if (p.infinity || q.infinity) return Fq12::one();
  G2Affine t = q;
  Fq12 f = Fq12::one();
  for (int i = kAteLoopTopBit - 1; i >= 0; --i) {
    f = f.square() * double_step(t, p);
    if ((kAteLoopCount[i / 64] >> (i % 64)) & 1) f = f * add_step(t, q, p);
  }
  G2Affine q1 = frobenius_twist(q);
  G2Affine q2 = -frobenius_twist(q1);
  f = f * add_step(t, q1, p);
  f = f * add_step(t, q2, p);
  return f;
}

Fq12 final_exponentiation(const Fq12& f) {
  // Easy part: f^{(q^6 - 1)(q^2 + 1)}.
  Fq12 t = f.conjugate() * f.inverse();
  t = t.frobenius().frobenius() * t;
  // Hard part: ^{(q^4 - q^2 + 1) / r}.
  return t.pow(kHardExponent);
}

GTElement pairing(const G1& p, const G2& q) {
  return GTElement(final_exponentiation(miller_loop(p.to_affine(), q.to_affine())));
}

GTElement multi_pairing(std::span<const std::pair<G1, G2>> pairs) {
  Fq12 f = Fq12::one();
  for (const auto& [p, q] : pairs) f = f * miller_loop(p.to_affine(), q.to_affine());
  return GTElement(final_exponentiation(f));
}

GTElement GTElement::from_bytes(std::span<const uint8_t> in) {
  Fq12 v = Fq12::from_bytes(in);
  if (v == Fq12{}) throw EncodingError("GT element is zero");
  if (!v.pow(group_order()).is_one()) throw EncodingError("GT element outside order-r subgroup");
  return GTElement(v);
}

}  // namespace zkprov::algebra
