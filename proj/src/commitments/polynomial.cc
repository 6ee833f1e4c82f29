#include "zkprov/commitments/polynomial.h"

#include <stdexcept>

namespace zkprov::commitments {

Polynomial::Polynomial(std::vector<Fr> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const Fr& c) { return Polynomial({c}); }

Polynomial Polynomial::from_roots(std::span<const Fr> roots) {
  std::vector<Fr> c{Fr::one()};
  for (const Fr& r : roots) {
    c.push_back(Fr::zero());
    for (size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

Fr Polynomial::evaluate(const Fr& x) const {
  Fr acc = Fr::zero();
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Fr> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Fr> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fr> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial::DivResult Polynomial::divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial(), *this};
  std::vector<Fr> rem = coeffs_;
  const size_t dd = divisor.coeffs_.size() - 1;
  std::vector<Fr> quo(rem.size() - dd);
  Fr lead_inv = divisor.coeffs_.back().inverse();
  for (size_t i = quo.size(); i-- > 0;) {
    Fr q = rem[i + dd] * lead_inv;
    quo[i] = q;
    for (size_t k = 0; k <= dd; ++k) rem[i + k] -= q * divisor.coeffs_[k];
  }
  rem.resize(dd);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::quotient_at(const Fr& z) const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Fr> q(coeffs_.size() - 1);
  Fr carry = Fr::zero();
  for (size_t i = coeffs_.size() - 1; i > 0; --i) {
    carry = carry * z + coeffs_[i];
    q[i - 1] = carry;
  }
  return Polynomial(std::move(q));
}

}  // namespace zkprov::commitments
