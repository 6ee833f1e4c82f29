#include "zkprov/accumulators/dataset_tree.h"

#include <json.hpp>
#include <set>
#include <stdexcept>

#include "zkprov/algebra/hash.h"

namespace zkprov::accumulators {

std::string canonicalize_record(std::string_view json_text) {
  // nlohmann::json keeps object keys in a std::map, so dump() sorts them.
  return nlohmann::json::parse(json_text).dump();
}

Fr leaf_hash(std::span<const uint8_t> record) { return algebra::hash_to_field(record, algebra::kKappaAccum); }

Fr node_hash(const Fr& left, const Fr& right) {
  std::array<uint8_t, 64> buf;
  left.write_le(std::span<uint8_t, 32>(buf.data(), 32));
  right.write_le(std::span<uint8_t, 32>(buf.data() + 32, 32));
  return algebra::hash_to_field(buf, algebra::kKappaAccum);
}

namespace {

Fr parent_of(const std::vector<Fr>& level, size_t parent_index) {
  size_t l = 2 * parent_index;
  size_t r = l + 1 < level.size() ? l + 1 : l;
  return node_hash(level[l], level[r]);
}

}  // namespace

DatasetTree DatasetTree::from_leaves(std::vector<Fr> leaves) {
  if (leaves.empty()) throw std::invalid_argument("dataset tree needs at least one record");
  DatasetTree t;
  t.levels_.push_back(std::move(leaves));
  do {
    const auto& below = t.levels_.back();
    std::vector<Fr> up((below.size() + 1) / 2);
    for (size_t i = 0; i < up.size(); ++i) up[i] = parent_of(below, i);
    t.levels_.push_back(std::move(up));
  } while (t.levels_.back().size() > 1);
  return t;
}

DatasetTree DatasetTree::build(const std::vector<Bytes>& records) {
  std::vector<Fr> leaves;
  leaves.reserve(records.size());
  for (const auto& r : records) leaves.push_back(leaf_hash(r));
  return from_leaves(std::move(leaves));
}

DatasetTree DatasetTree::batch_update(const std::vector<std::pair<size_t, Bytes>>& updates) const {
  DatasetTree t = *this;
  std::set<size_t> touched;
  for (const auto& [index, record] : updates) {
    if (index >= leaf_count()) throw std::out_of_range("batch_update: leaf index out of range");
    t.levels_[0][index] = leaf_hash(record);
    touched.insert(index);
  }
  for (size_t lvl = 1; lvl < t.levels_.size() && !touched.empty(); ++lvl) {
    std::set<size_t> parents;
    for (size_t i : touched) parents.insert(i / 2);
    for (size_t p : parents) t.levels_[lvl][p] = parent_of(t.levels_[lvl - 1], p);
    touched = std::move(parents);
  }
  return t;
}

}  // namespace zkprov::accumulators
