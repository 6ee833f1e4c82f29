#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zkprov/algebra/field.h"
#include "zkprov/common/bytes.h"

namespace zkprov::accumulators {

using algebra::Fr;

// Canonical leaf preimage of a JSON record: sorted keys, no whitespace.
// Throws on malformed JSON.
std::string canonicalize_record(std::string_view json_text);

Fr leaf_hash(std::span<const uint8_t> record);
Fr node_hash(const Fr& left, const Fr& right);

// Binary Merkle tree over hash_to_field. Levels whose size is odd pair the
// last node with itself; a single leaf still gets one parent.
class DatasetTree {
 public:
  static DatasetTree build(const std::vector<Bytes>& records);
  static DatasetTree from_leaves(std::vector<Fr> leaves);

  // Recomputes only the ancestors of the updated leaves.
  DatasetTree batch_update(const std::vector<std::pair<size_t, Bytes>>& updates) const;

  const Fr& root() const { return levels_.back().front(); }
  size_t leaf_count() const { return levels_.front().size(); }
  const std::vector<Fr>& leaves() const { return levels_.front(); }
  const std::vector<std::vector<Fr>>& levels() const { return levels_; }

 private:
  std::vector<std::vector<Fr>> levels_;
};

}  // namespace zkprov::accumulators
