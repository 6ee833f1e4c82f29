#include "zkprov/accumulators/training_accumulator.h"

#include <algorithm>

#include "zkprov/algebra/pairing.h"

namespace zkprov::accumulators {

TrainingAccumulator TrainingAccumulator::build(const KzgParams& params, std::vector<Fr> roots, const KzgBlind& blind) {
  if (roots.empty()) throw std::invalid_argument("training accumulator needs at least one root");
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) throw std::invalid_argument("duplicate dataset root in accumulator");
  if (roots.size() > params.degree) throw commitments::ParameterError("more training roots than SRS degree");
  TrainingAccumulator acc;
  acc.t_ = Polynomial::from_roots(roots);
  acc.roots_ = std::move(roots);
  acc.blind_ = blind;
  acc.r_tr_ = commitments::kzg_commit(params, acc.t_, blind);
  return acc;
}

MembershipWitness TrainingAccumulator::witness(const KzgParams& params, const Fr& rho) const {
  if (!contains(rho)) throw NotMemberError();
  Polynomial q = t_.quotient_at(rho);
  MembershipWitness w;
  w.w = commitments::kzg_commit(params, q, KzgBlind{blind_.r1, Fr::zero()});
  w.epsilon = blind_.r0 + blind_.r1 * rho;
  return w;
}

bool check_membership(const KzgParams& params, const G1& r_tr, const Fr& rho, const MembershipWitness& w) {
  commitments::KzgOpening o{Fr::zero(), w.w, w.epsilon};
  return commitments::kzg_verify(params, r_tr, rho, o);
}

}  // namespace zkprov::accumulators
