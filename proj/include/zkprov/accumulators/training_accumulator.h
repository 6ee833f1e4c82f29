#pragma once

#include <vector>

#include "zkprov/commitments/kzg.h"

namespace zkprov::accumulators {

using algebra::Fr;
using algebra::G1;
using commitments::KzgBlind;
using commitments::KzgParams;
using commitments::Polynomial;

// W = g^{Q(alpha)} h^{t1} with Q = T / (X - rho), and epsilon = t0 + t1 rho,
// so that R_tr = W^{alpha - rho} h^{epsilon}.
struct MembershipWitness {
  G1 w;
  Fr epsilon;
};

class NotMemberError : public std::runtime_error {
 public:
  NotMemberError() : std::runtime_error("not in training set") {}
};

// Characteristic polynomial T(X) = prod (X - rho_i) of the training roots,
// committed with hiding KZG as R_tr.
class TrainingAccumulator {
 public:
  static TrainingAccumulator build(const KzgParams& params, std::vector<Fr> roots, const KzgBlind& blind);

  const std::vector<Fr>& roots() const { return roots_; }
  const Polynomial& polynomial() const { return t_; }
  const KzgBlind& blind() const { return blind_; }
  const G1& commitment() const { return r_tr_; }
  bool contains(const Fr& rho) const { return t_.evaluate(rho).is_zero(); }

  MembershipWitness witness(const KzgParams& params, const Fr& rho) const;

 private:
  std::vector<Fr> roots_;
  Polynomial t_;
  KzgBlind blind_;
  G1 r_tr_;
};

// Non-hiding check with rho in the clear:
// e(R_tr h^{-epsilon}, g2) == e(W, g2^alpha g2^{-rho}).
bool check_membership(const KzgParams& params, const G1& r_tr, const Fr& rho, const MembershipWitness& w);

}  // namespace zkprov::accumulators
