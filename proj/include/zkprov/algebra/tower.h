#pragma once

#include <array>
#include <span>

#include "zkprov/algebra/field.h"

// Extension tower for the BN254 pairing:
//   Fq2  = Fq[u]  / (u^2 + 1)
//   Fq6  = Fq2[v] / (v^3 - xi), xi = 9 + u
//   Fq12 = Fq6[w] / (w^2 - v)
namespace zkprov::algebra {

struct Fq2 {
  Fq c0, c1;

  static Fq2 zero() { return {}; }
  static Fq2 one() { return {Fq::one(), Fq::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  friend bool operator==(const Fq2& a, const Fq2& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
  friend bool operator!=(const Fq2& a, const Fq2& b) { return !(a == b); }

  friend Fq2 operator+(const Fq2& a, const Fq2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend Fq2 operator-(const Fq2& a, const Fq2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  Fq2 operator-() const { return {-c0, -c1}; }
  Fq2& operator+=(const Fq2& o) { return *this = *this + o; }
  Fq2& operator-=(const Fq2& o) { return *this = *this - o; }
  Fq2& operator*=(const Fq2& o) { return *this = *this * o; }

  friend Fq2 operator*(const Fq2& a, const Fq2& b) {
    Fq v0 = a.c0 * b.c0;
    Fq v1 = a.c1 * b.c1;
    Fq t = (a.c0 + a.c1) * (b.c0 + b.c1);
    return {v0 - v1, t - v0 - v1};
  }
  Fq2 scale(const Fq& s) const { return {c0 * s, c1 * s}; }

  Fq2 square() const {
    Fq a = (c0 + c1) * (c0 - c1);
    Fq b = c0 * c1;
    return {a, b + b};
  }
  Fq2 dbl() const { return *this + *this; }
  Fq2 conjugate() const { return {c0, -c1}; }

  Fq2 mul_by_xi() const {
    // (c0 + c1 u)(9 + u) = 9c0 - c1 + (c0 + 9c1) u
    Fq nine = Fq::from_u64(9);
    return {c0 * nine - c1, c0 + c1 * nine};
  }

  Fq2 inverse() const {
    Fq t = (c0.square() + c1.square()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  template <size_t N>
  Fq2 pow(const std::array<uint64_t, N>& e) const {
    Fq2 acc = one();
    for (int i = static_cast<int>(N) - 1; i >= 0; --i) {
      for (int b = 63; b >= 0; --b) {
        acc = acc.square();
        if ((e[i] >> b) & 1) acc = acc * *this;
      }
    }
    return acc;
  }
};

// Square root in Fq2 for q = 3 mod 4. Returns false for non-squares.
bool fq2_sqrt(const Fq2& a, Fq2& out);

struct Fq6 {
  Fq2 c0, c1, c2;

  static Fq6 zero() { return {}; }
  static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  friend bool operator==(const Fq6& a, const Fq6& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }

  friend Fq6 operator+(const Fq6& a, const Fq6& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
  friend Fq6 operator-(const Fq6& a, const Fq6& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
  Fq6 operator-() const { return {-c0, -c1, -c2}; }

  friend Fq6 operator*(const Fq6& a, const Fq6& b) {
    Fq2 v0 = a.c0 * b.c0;
    Fq2 v1 = a.c1 * b.c1;
    Fq2 v2 = a.c2 * b.c2;
    Fq2 t0 = ((a.c1 + a.c2) * (b.c1 + b.c2) - v1 - v2).mul_by_xi() + v0;
    Fq2 t1 = (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1 + v2.mul_by_xi();
    Fq2 t2 = (a.c0 + a.c2) * (b.c0 + b.c2) - v0 - v2 + v1;
    return {t0, t1, t2};
  }

  Fq6 square() const { return *this * *this; }
  Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fq6 scale(const Fq2& s) const { return {c0 * s, c1 * s, c2 * s}; }

  Fq6 inverse() const {
    Fq2 a = c0.square() - (c1 * c2).mul_by_xi();
    Fq2 b = c2.square().mul_by_xi() - c0 * c1;
    Fq2 c = c1.square() - c0 * c2;
    Fq2 det = c0 * a + ((c2 * b) + (c1 * c)).mul_by_xi();
    Fq2 inv = det.inverse();
    return {a * inv, b * inv, c * inv};
  }
};

struct Fq12 {
  Fq6 c0, c1;

  static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }
  bool is_one() const { return c0 == Fq6::one() && c1.is_zero(); }
  friend bool operator==(const Fq12& a, const Fq12& b) { return a.c0 == b.c0 && a.c1 == b.c1; }
  friend bool operator!=(const Fq12& a, const Fq12& b) { return !(a == b); }

  friend Fq12 operator*(const Fq12& a, const Fq12& b) {
    Fq6 v0 = a.c0 * b.c0;
    Fq6 v1 = a.c1 * b.c1;
    Fq6 t = (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1;
    return {v0 + v1.mul_by_v(), t};
  }
  Fq12& operator*=(const Fq12& o) { return *this = *this * o; }

  Fq12 square() const {
    Fq6 ab = c0 * c1;
    Fq6 t = (c0 + c1) * (c0 + c1.mul_by_v()) - ab - ab.mul_by_v();
    return {t, ab + ab};
  }

  Fq12 conjugate() const { return {c0, -c1}; }

  Fq12 inverse() const {
    Fq6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  // x -> x^q
  Fq12 frobenius() const;

  template <size_t N>
  Fq12 pow(const std::array<uint64_t, N>& e) const {
    Fq12 acc = one();
    bool started = false;
    for (int i = static_cast<int>(N) - 1; i >= 0; --i) {
      for (int b = 63; b >= 0; --b) {
        if (started) acc = acc.square();
        if ((e[i] >> b) & 1) {
          acc = started ? acc * *this : *this;
          started = true;
        }
      }
    }
    return acc;
  }

  static constexpr size_t kBytes = 12 * 32;
  // Coefficients in the order c0.c0.c0, c0.c0.c1, c0.c1.c0, ... each 32 bytes LE.
  std::array<uint8_t, kBytes> to_bytes() const;
  static Fq12 from_bytes(std::span<const uint8_t> in);
};

}  // namespace zkprov::algebra
