#pragma once

#include <array>
#include <span>
#include <vector>

#include "zkprov/algebra/field.h"
#include "zkprov/algebra/tower.h"

namespace zkprov::algebra {

struct G1Curve {
  using Base = Fq;
  static Fq b() { return Fq::from_u64(3); }
};

struct G2Curve {
  using Base = Fq2;
  // 3 / (9 + u), the D-type sextic twist of y^2 = x^3 + 3.
  static const Fq2& b();
};

template <class Curve>
struct AffinePoint {
  using F = typename Curve::Base;
  F x{}, y{};
  bool infinity = true;

  bool is_on_curve() const {
    if (infinity) return true;
    return y.square() == x.square() * x + Curve::b();
  }
  AffinePoint operator-() const {
    AffinePoint r = *this;
    if (!infinity) r.y = -r.y;
    return r;
  }
  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

// Short Weierstrass point (a = 0) in Jacobian coordinates; Z = 0 is infinity.
template <class Curve>
class JacobianPoint {
 public:
  using F = typename Curve::Base;
  using Affine = AffinePoint<Curve>;

  JacobianPoint() : x_(F::one()), y_(F::one()), z_(F::zero()) {}
  JacobianPoint(const Affine& a) {  // NOLINT(google-explicit-constructor)
    if (a.infinity) {
      *this = JacobianPoint();
    } else {
      x_ = a.x;
      y_ = a.y;
      z_ = F::one();
    }
  }

  static JacobianPoint identity() { return JacobianPoint(); }
  bool is_identity() const { return z_.is_zero(); }

  JacobianPoint dbl() const {
    if (is_identity()) return *this;
    F a = x_.square();
    F b = y_.square();
    F c = b.square();
    F d = ((x_ + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    JacobianPoint r;
    r.x_ = f - d.dbl();
    F c8 = c.dbl().dbl().dbl();
    r.y_ = e * (d - r.x_) - c8;
    r.z_ = (y_ * z_).dbl();
    return r;
  }

  friend JacobianPoint operator+(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    F u1 = p.x_ * z2z2;
    F u2 = q.x_ * z1z1;
    F s1 = p.y_ * q.z_ * z2z2;
    F s2 = q.y_ * p.z_ * z1z1;
    F h = u2 - u1;
    F rr = (s2 - s1).dbl();
    if (h.is_zero()) {
      if (rr.is_zero()) return p.dbl();
      return identity();
    }
    F i = h.dbl().square();
    F j = h * i;
    F v = u1 * i;
    JacobianPoint r;
    r.x_ = rr.square() - j - v.dbl();
    r.y_ = rr * (v - r.x_) - (s1 * j).dbl();
    r.z_ = ((p.z_ + q.z_).square() - z1z1 - z2z2) * h;
    return r;
  }

  // Mixed addition with an affine point.
  JacobianPoint add_affine(const Affine& q) const {
    if (q.infinity) return *this;
    if (is_identity()) return JacobianPoint(q);
    F z1z1 = z_.square();
    F u2 = q.x * z1z1;
    F s2 = q.y * z_ * z1z1;
    F h = u2 - x_;
    F rr = (s2 - y_).dbl();
    if (h.is_zero()) {
      if (rr.is_zero()) return dbl();
      return identity();
    }
    F hh = h.square();
    F i = hh.dbl().dbl();
    F j = h * i;
    F v = x_ * i;
    JacobianPoint r;
    r.x_ = rr.square() - j - v.dbl();
    r.y_ = rr * (v - r.x_) - (y_ * j).dbl();
    r.z_ = (z_ + h).square() - z1z1 - hh;
    return r;
  }

  JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }
  JacobianPoint operator-() const {
    JacobianPoint r = *this;
    r.y_ = -r.y_;
    return r;
  }
  friend JacobianPoint operator-(const JacobianPoint& p, const JacobianPoint& q) { return p + (-q); }
  JacobianPoint& operator-=(const JacobianPoint& o) { return *this = *this - o; }

  friend bool operator==(const JacobianPoint& p, const JacobianPoint& q) {
    if (p.is_identity() || q.is_identity()) return p.is_identity() == q.is_identity();
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    if (p.x_ * z2z2 != q.x_ * z1z1) return false;
    return p.y_ * q.z_ * z2z2 == q.y_ * p.z_ * z1z1;
  }
  friend bool operator!=(const JacobianPoint& p, const JacobianPoint& q) { return !(p == q); }

  // Multiplication by a little-endian integer (4-bit fixed window).
  template <size_t N>
  JacobianPoint mul_limbs(const std::array<uint64_t, N>& k) const {
    std::array<JacobianPoint, 16> table;
    table[0] = identity();
    table[1] = *this;
    for (size_t i = 2; i < 16; ++i) table[i] = table[i - 1] + *this;
    JacobianPoint acc;
    for (int i = static_cast<int>(N) - 1; i >= 0; --i) {
      for (int nib = 15; nib >= 0; --nib) {
        acc = acc.dbl().dbl().dbl().dbl();
        acc += table[(k[i] >> (4 * nib)) & 0xf];
      }
    }
    return acc;
  }

  JacobianPoint mul(const Fr& k) const { return mul_limbs(k.to_canonical()); }
  friend JacobianPoint operator*(const Fr& k, const JacobianPoint& p) { return p.mul(k); }

  Affine to_affine() const {
    Affine a;
    if (is_identity()) return a;
    F zinv = z_.inverse();
    F zinv2 = zinv.square();
    a.x = x_ * zinv2;
    a.y = y_ * zinv2 * zinv;
    a.infinity = false;
    return a;
  }

  static std::vector<Affine> batch_to_affine(std::span<const JacobianPoint> pts) {
    std::vector<F> zs(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) zs[i] = pts[i].z_;
    batch_invert<F>(zs);
    std::vector<Affine> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].is_identity()) continue;
      F zinv2 = zs[i].square();
      out[i].x = pts[i].x_ * zinv2;
      out[i].y = pts[i].y_ * zinv2 * zs[i];
      out[i].infinity = false;
    }
    return out;
  }

  const F& x() const { return x_; }
  const F& y() const { return y_; }
  const F& z() const { return z_; }

 private:
  F x_, y_, z_;
};

using G1Affine = AffinePoint<G1Curve>;
using G2Affine = AffinePoint<G2Curve>;
using G1 = JacobianPoint<G1Curve>;
using G2 = JacobianPoint<G2Curve>;
using G1Element = G1;
using G2Element = G2;

const G1Affine& g1_generator();
const G2Affine& g2_generator();

// Group order r as little-endian limbs (equals Fr's modulus).
inline const Limbs& group_order() { return Fr::modulus(); }

// True when r * P is the identity.
bool g2_in_subgroup(const G2& p);

// Compressed encodings. G1: 32 bytes (x little-endian, bit 7 of the last
// byte = infinity, bit 6 = y is the larger root). G2: 64 bytes (x.c0 then
// x.c1, same flag bits in the last byte).
constexpr size_t kG1Bytes = 32;
constexpr size_t kG2Bytes = 64;

std::array<uint8_t, kG1Bytes> g1_to_bytes(const G1& p);
std::array<uint8_t, kG2Bytes> g2_to_bytes(const G2& p);
// Throw EncodingError on malformed, off-curve or out-of-subgroup input.
G1 g1_from_bytes(std::span<const uint8_t> in);
G2 g2_from_bytes(std::span<const uint8_t> in);

}  // namespace zkprov::algebra
