#pragma once

#include <openssl/sha.h>

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "zkprov/algebra/curve.h"
#include "zkprov/algebra/field.h"
#include "zkprov/common/bytes.h"

namespace zkprov::algebra {

using Digest = std::array<uint8_t, 32>;

// Protocol domain separators.
inline constexpr std::string_view kKappaChallenge = "ZKPROV/challenge";    // kappa_1
inline constexpr std::string_view kKappaSeed = "ZKPROV/seed";              // kappa_2
inline constexpr std::string_view kKappaTranscript = "ZKPROV/transcript";  // kappa_3
inline constexpr std::string_view kKappaAccum = "ZKPROV/accum";            // kappa_4

// The low-level SHA256_CTX API is deprecated in OpenSSL 3 but avoids the
// per-call allocation of EVP_MD_CTX, which matters for hash_to_field.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
class Sha256 {
 public:
  Sha256() { SHA256_Init(&ctx_); }
  Sha256& update(std::span<const uint8_t> data) {
    SHA256_Update(&ctx_, data.data(), data.size());
    return *this;
  }
  Sha256& update(std::string_view s) { return update(as_bytes(s)); }
  Digest finish() {
    Digest d;
    SHA256_Final(d.data(), &ctx_);
    return d;
  }

 private:
  SHA256_CTX ctx_;
};
#pragma GCC diagnostic pop

Digest sha256(std::span<const uint8_t> data);
inline Digest sha256(std::string_view s) { return sha256(as_bytes(s)); }

// expand-and-reduce: H_i = SHA-256(len(dst) || dst || i || msg) for i in {0, 1};
// the 64-byte H_0 || H_1 is read big-endian and reduced modulo p.
// dst must be non-empty and at most 255 bytes.
Fr hash_to_field(std::span<const uint8_t> msg, std::string_view dst);
inline Fr hash_to_field(std::string_view msg, std::string_view dst) {
  return hash_to_field(as_bytes(msg), dst);
}

// Same construction reduced modulo the base-field prime q.
Fq hash_to_base(std::span<const uint8_t> msg, std::string_view dst);

// Try-and-increment: x = hash_to_base(ctr || msg, dst) for ctr = 0, 1, ...
// until x^3 + 3 is square; the root with the smaller canonical value is used.
G1 hash_to_g1(std::span<const uint8_t> msg, std::string_view dst);
inline G1 hash_to_g1(std::string_view msg, std::string_view dst) {
  return hash_to_g1(as_bytes(msg), dst);
}

}  // namespace zkprov::algebra
