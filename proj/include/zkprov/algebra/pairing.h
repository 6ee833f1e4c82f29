#pragma once

#include <array>
#include <span>
#include <utility>

#include "zkprov/algebra/curve.h"
#include "zkprov/algebra/tower.h"

namespace zkprov::algebra {

// Element of the order-r subgroup of Fq12^*, written multiplicatively.
class GTElement {
 public:
  GTElement() : v_(Fq12::one()) {}
  explicit GTElement(const Fq12& v) : v_(v) {}

  static GTElement identity() { return GTElement(); }
  bool is_identity() const { return v_.is_one(); }

  friend GTElement operator*(const GTElement& a, const GTElement& b) { return GTElement(a.v_ * b.v_); }
  GTElement& operator*=(const GTElement& o) { return *this = *this * o; }
  // Elements of the cyclotomic subgroup invert by conjugation.
  GTElement inverse() const { return GTElement(v_.conjugate()); }
  GTElement pow(const Fr& e) const { return GTElement(v_.pow(e.to_canonical())); }

  friend bool operator==(const GTElement& a, const GTElement& b) { return a.v_ == b.v_; }
  friend bool operator!=(const GTElement& a, const GTElement& b) { return a.v_ != b.v_; }

  const Fq12& value() const { return v_; }
  std::array<uint8_t, Fq12::kBytes> to_bytes() const { return v_.to_bytes(); }
  // Rejects non-canonical coefficients and elements outside the order-r subgroup.
  static GTElement from_bytes(std::span<const uint8_t> in);

 private:
  Fq12 v_;
};

Fq12 miller_loop(const G1Affine& p, const G2Affine& q);
Fq12 final_exponentiation(const Fq12& f);

// Optimal ate pairing e: G1 x G2 -> GT.
GTElement pairing(const G1& p, const G2& q);

// Product of pairings sharing one final exponentiation.
GTElement multi_pairing(std::span<const std::pair<G1, G2>> pairs);

}  // namespace zkprov::algebra
