#include "zkprov/auth/bls.h"

#include <openssl/crypto.h>

#include <set>

#include "zkprov/algebra/hash.h"
#include "zkprov/algebra/pairing.h"
#include "zkprov/common/io.h"

namespace zkprov::auth {

namespace {

constexpr std::string_view kKeyMagic = "ZKPKEY1";
constexpr uint8_t kPublicKind = 0;
constexpr uint8_t kSecretKind = 1;

G1 hash_message(std::span<const uint8_t> message) { return algebra::hash_to_g1(message, kBlsDomain); }

ByteReader open_key_file(const Bytes& data, uint8_t expected_kind) {
  ByteReader r(data);
  auto magic = r.take(kKeyMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kKeyMagic.begin())) throw DecodeError("bad key file magic");
  if (r.u8() != expected_kind) throw DecodeError("unexpected key kind");
  return r;
}

}  // namespace

Bytes PublicKey::to_bytes() const {
  auto b = algebra::g2_to_bytes(point);
  return Bytes(b.begin(), b.end());
}

PublicKey PublicKey::from_bytes(std::span<const uint8_t> in) {
  PublicKey pk{algebra::g2_from_bytes(in)};
  if (pk.point.is_identity()) throw algebra::EncodingError("public key is the identity");
  return pk;
}

std::string PublicKey::fingerprint() const {
  auto d = algebra::sha256(to_bytes());
  return to_hex(std::span<const uint8_t>(d.data(), 8));
}

KeyPair KeyPair::generate(RandomSource& rng) { return from_secret(rng.nonzero_scalar()); }

KeyPair KeyPair::from_secret(const Fr& sk) {
  if (sk.is_zero()) throw std::invalid_argument("secret key must be nonzero");
  KeyPair k;
  k.sk_ = sk;
  k.pk_.point = G2(algebra::g2_generator()).mul(sk);
  return k;
}

KeyPair::~KeyPair() { OPENSSL_cleanse(&sk_, sizeof(sk_)); }

void KeyPair::save(const std::filesystem::path& path) const {
  ByteWriter w;
  w.raw(kKeyMagic);
  w.u8(kSecretKind);
  w.raw(sk_.to_bytes_le());
  w.raw(pk_.to_bytes());
  Bytes data = w.take();
  write_file(path, data, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
  OPENSSL_cleanse(data.data(), data.size());
}

KeyPair KeyPair::load(const std::filesystem::path& path) {
  Bytes data = read_file(path);
  ByteReader r = open_key_file(data, kSecretKind);
  KeyPair k = from_secret(Fr::from_bytes_le(r.take(32)));
  PublicKey stored = PublicKey::from_bytes(r.take(algebra::kG2Bytes));
  r.expect_end();
  OPENSSL_cleanse(data.data(), data.size());
  if (!(stored == k.pk_)) throw DecodeError("key file public key does not match secret");
  return k;
}

void save_public_key(const PublicKey& pk, const std::filesystem::path& path) {
  ByteWriter w;
  w.raw(kKeyMagic);
  w.u8(kPublicKind);
  w.raw(pk.to_bytes());
  write_file(path, w.bytes());
}

PublicKey load_public_key(const std::filesystem::path& path) {
  Bytes data = read_file(path);
  ByteReader r = open_key_file(data, kPublicKind);
  PublicKey pk = PublicKey::from_bytes(r.take(algebra::kG2Bytes));
  r.expect_end();
  return pk;
}

Signature bls_sign(const KeyPair& key, std::span<const uint8_t> message) {
  return {hash_message(message).mul(key.secret())};
}

bool bls_verify(const PublicKey& pk, std::span<const uint8_t> message, const Signature& sig) {
  if (pk.point.is_identity() || sig.point.is_identity()) return false;
  std::pair<G1, G2> pairs[] = {{hash_message(message), pk.point}, {-sig.point, G2(algebra::g2_generator())}};
  return algebra::multi_pairing(pairs).is_identity();
}

bool bls_verify_bytes(const PublicKey& pk, std::span<const uint8_t> message, std::span<const uint8_t> sig) {
  try {
    return bls_verify(pk, message, Signature::from_bytes(sig));
  } catch (const algebra::EncodingError&) {
    return false;
  }
}

Signature bls_aggregate(std::span<const Signature> sigs) {
  G1 acc;
  for (const auto& s : sigs) acc += s.point;
  return {acc};
}

bool bls_aggregate_verify(std::span<const PublicKey> pks, const std::vector<Bytes>& messages, const Signature& agg) {
  if (pks.size() != messages.size() || pks.empty()) throw std::invalid_argument("aggregate verify: length mismatch");
  std::set<Bytes> distinct(messages.begin(), messages.end());
  if (distinct.size() != messages.size()) throw std::invalid_argument("aggregate verify: repeated message");
  std::vector<std::pair<G1, G2>> pairs;
  for (size_t i = 0; i < pks.size(); ++i) {
    if (pks[i].point.is_identity()) return false;
    pairs.emplace_back(hash_message(messages[i]), pks[i].point);
  }
  pairs.emplace_back(-agg.point, G2(algebra::g2_generator()));
  return algebra::multi_pairing(pairs).is_identity();
}

}  // namespace zkprov::auth
