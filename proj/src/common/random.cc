#include "zkprov/common/random.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <stdexcept>
#include <vector>

namespace zkprov {

uint64_t RandomSource::next_u64() {
  std::array<uint8_t, 8> b;
  fill(b);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

uint64_t RandomSource::uniform(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: zero bound");
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

algebra::Fr RandomSource::scalar() {
  const auto& m = algebra::Fr::modulus();
  for (;;) {
    std::array<uint8_t, 32> b;
    fill(b);
    b[31] &= 0x3f;
    algebra::Limbs v{};
    for (size_t i = 0; i < 4; ++i)
      for (size_t k = 0; k < 8; ++k) v[i] |= static_cast<uint64_t>(b[i * 8 + k]) << (8 * k);
    bool below = false;
    for (int i = 3; i >= 0; --i) {
      if (v[i] != m[i]) {
        below = v[i] < m[i];
        break;
      }
    }
    if (below) return algebra::Fr::from_canonical_unchecked(v);
  }
}

algebra::Fr RandomSource::nonzero_scalar() {
  for (;;) {
    auto s = scalar();
    if (!s.is_zero()) return s;
  }
}

void OsRandom::fill(std::span<uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) throw std::runtime_error("RAND_bytes failed");
}

struct DeterministicRandom::Ctx {
  EVP_CIPHER_CTX* cipher = nullptr;
  ~Ctx() { EVP_CIPHER_CTX_free(cipher); }
};

DeterministicRandom::DeterministicRandom(uint64_t seed) {
  std::array<uint8_t, 32> key{};
  for (int i = 0; i < 8; ++i) key[i] = static_cast<uint8_t>(seed >> (8 * i));
  init(key);
}

DeterministicRandom::DeterministicRandom(std::span<const uint8_t, 32> key) { init(key); }

DeterministicRandom::~DeterministicRandom() = default;

void DeterministicRandom::init(std::span<const uint8_t, 32> key) {
  ctx_ = std::make_unique<Ctx>();
  ctx_->cipher = EVP_CIPHER_CTX_new();
  std::array<uint8_t, 16> iv{};
  if (!ctx_->cipher || EVP_EncryptInit_ex(ctx_->cipher, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1)
    throw std::runtime_error("chacha20 init failed");
}

void DeterministicRandom::fill(std::span<uint8_t> out) {
  std::fill(out.begin(), out.end(), 0);
  int len = 0;
  if (EVP_EncryptUpdate(ctx_->cipher, out.data(), &len, out.data(), static_cast<int>(out.size())) != 1)
    throw std::runtime_error("chacha20 keystream failed");
}

}  // namespace zkprov
