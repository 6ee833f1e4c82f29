#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "zkprov/algebra/curve.h"
#include "zkprov/common/bytes.h"
#include "zkprov/common/random.h"

namespace zkprov::auth {

using algebra::Fr;
using algebra::G1;
using algebra::G2;

// Hash-to-G1 domain for signed messages.
inline constexpr std::string_view kBlsDomain = "ZKPROV/bls-sig";

struct PublicKey {
  G2 point;
  Bytes to_bytes() const;
  static PublicKey from_bytes(std::span<const uint8_t> in);
  // Hex of the first 8 bytes of SHA-256 over the compressed key.
  std::string fingerprint() const;
  friend bool operator==(const PublicKey& a, const PublicKey& b) { return a.point == b.point; }
};

struct Signature {
  G1 point;
  std::array<uint8_t, algebra::kG1Bytes> to_bytes() const { return algebra::g1_to_bytes(point); }
  static Signature from_bytes(std::span<const uint8_t> in) { return {algebra::g1_from_bytes(in)}; }
};

// Secret scalar is wiped when the key pair is destroyed.
class KeyPair {
 public:
  static KeyPair generate(RandomSource& rng);
  static KeyPair from_secret(const Fr& sk);
  ~KeyPair();
  KeyPair(const KeyPair&) = default;
  KeyPair& operator=(const KeyPair&) = default;

  const PublicKey& public_key() const { return pk_; }
  const Fr& secret() const { return sk_; }

  // Key file "ZKPKEY1": kind byte 1, secret scalar, public key.
  void save(const std::filesystem::path& path) const;
  static KeyPair load(const std::filesystem::path& path);

 private:
  KeyPair() = default;
  Fr sk_;
  PublicKey pk_;
};

// Key file "ZKPKEY1" with kind byte 0 and the public key only.
void save_public_key(const PublicKey& pk, const std::filesystem::path& path);
PublicKey load_public_key(const std::filesystem::path& path);

Signature bls_sign(const KeyPair& key, std::span<const uint8_t> message);
bool bls_verify(const PublicKey& pk, std::span<const uint8_t> message, const Signature& sig);
// Same, but takes the encoded signature and returns false on malformed bytes.
bool bls_verify_bytes(const PublicKey& pk, std::span<const uint8_t> message, std::span<const uint8_t> sig);

Signature bls_aggregate(std::span<const Signature> sigs);
// Throws std::invalid_argument on length mismatch or repeated messages.
bool bls_aggregate_verify(std::span<const PublicKey> pks, const std::vector<Bytes>& messages, const Signature& agg);

}  // namespace zkprov::auth
