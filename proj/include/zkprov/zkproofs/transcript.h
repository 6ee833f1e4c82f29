#pragma once

#include <span>
#include <string_view>

#include "zkprov/algebra/curve.h"
#include "zkprov/algebra/hash.h"
#include "zkprov/algebra/pairing.h"

namespace zkprov::zkproofs {

using algebra::Fr;
using algebra::G1;

// Fiat-Shamir transcript. The state is a SHA-256 chain over length-prefixed
// (label, data) pairs; challenges are hash_to_field(state || label || counter,
// kappa_3) and are absorbed back before returning.
class Transcript {
 public:
  explicit Transcript(std::string_view domain);

  void absorb(std::string_view label, std::span<const uint8_t> data);
  void absorb(std::string_view label, std::string_view data) { absorb(label, as_bytes(data)); }
  void absorb(std::string_view label, const Fr& x);
  void absorb(std::string_view label, const G1& p);
  void absorb(std::string_view label, const algebra::G2& p);
  void absorb(std::string_view label, const algebra::GTElement& x);
  void absorb_u64(std::string_view label, uint64_t v);

  Fr challenge(std::string_view label);
  // Independent child transcript bound to everything absorbed so far.
  Transcript fork(std::string_view label) const;

  const algebra::Digest& state() const { return state_; }

 private:
  Transcript() = default;
  algebra::Digest state_{};
  uint64_t counter_ = 0;
};

}  // namespace zkprov::zkproofs
