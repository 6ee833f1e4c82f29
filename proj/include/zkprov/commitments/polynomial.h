#pragma once

#include <span>
#include <vector>

#include "zkprov/algebra/field.h"

namespace zkprov::commitments {

using algebra::Fr;

// Dense univariate polynomial over Fr, coefficients lowest degree first.
// Trailing zeros are trimmed so degree() is exact; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Fr> coeffs);

  static Polynomial constant(const Fr& c);
  // prod (X - r) over the given roots; monic.
  static Polynomial from_roots(std::span<const Fr> roots);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Fr>& coeffs() const { return coeffs_; }
  Fr coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Fr::zero(); }

  Fr evaluate(const Fr& x) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Euclidean division; throws std::domain_error on a zero divisor.
  struct DivResult;
  DivResult divide(const Polynomial& divisor) const;
  // (f(X) - f(z)) / (X - z) by synthetic division.
  Polynomial quotient_at(const Fr& z) const;

 private:
  void trim();
  std::vector<Fr> coeffs_;
};

struct Polynomial::DivResult {
  Polynomial quotient;
  Polynomial remainder;
};

}  // namespace zkprov::commitments
