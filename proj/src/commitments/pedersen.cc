#include "zkprov/commitments/pedersen.h"

#include <map>
#include <mutex>
#include <stdexcept>

#include "zkprov/algebra/hash.h"
#include "zkprov/algebra/msm.h"
#include "zkprov/common/bytes.h"
#include "zkprov/common/parallel.h"

namespace zkprov::commitments {

namespace {

G1Affine derive_generator(const std::string& family, size_t index) {
  ByteWriter w;
  w.raw("pedersen/");
  w.str(family);
  w.u64(index);
  return algebra::hash_to_g1(w.bytes(), algebra::kKappaAccum).to_affine();
}

}  // namespace

const G1Affine& PedersenKey::blinding_base() {
  static const G1Affine h = algebra::hash_to_g1("pedersen/H", algebra::kKappaAccum).to_affine();
  return h;
}

PedersenKey::PedersenKey(std::string family, std::vector<G1Affine> g)
    : family_(std::move(family)), g_(std::move(g)), h_(blinding_base()) {}

const algebra::FixedBaseTable& PedersenKey::table() const {
  std::call_once(table_once_, [this] {
    table_ = std::make_unique<algebra::FixedBaseTable>(g_);
    table_ready_.store(true, std::memory_order_release);
  });
  return *table_;
}

G1 PedersenKey::msm(std::span<const Fr> scalars) const {
  if (scalars.size() > g_.size()) throw std::invalid_argument("pedersen msm: more scalars than generators");
  if (table_ready_.load(std::memory_order_acquire)) return table_->msm(scalars);
  return algebra::msm(generators().first(scalars.size()), scalars);
}

std::shared_ptr<const PedersenKey> PedersenKey::get(const std::string& family, size_t count) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const PedersenKey>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[family];
  if (slot && slot->size() >= count) return slot;
  std::vector<G1Affine> g;
  if (slot) g.assign(slot->g_.begin(), slot->g_.end());
  size_t have = g.size();
  g.resize(count);
  parallel_for(count - have, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) g[have + i] = derive_generator(family, have + i);
  }, 256);
  slot = std::make_shared<PedersenKey>(family, std::move(g));
  return slot;
}

G1 pedersen_commit(const PedersenKey& key, std::span<const Fr> v, const Fr& blind) {
  if (v.size() > key.size()) throw std::invalid_argument("pedersen_commit: vector longer than generator set");
  G1 acc = algebra::msm(key.generators().first(v.size()), v);
  return acc + G1(key.h()).mul(blind);
}

G1 pedersen_commit_small(const PedersenKey& key, std::span<const int64_t> v, const Fr& blind) {
  if (v.size() > key.size()) throw std::invalid_argument("pedersen_commit: vector longer than generator set");
  G1 acc = algebra::msm_small(key.generators().first(v.size()), v);
  return acc + G1(key.h()).mul(blind);
}

}  // namespace zkprov::commitments
