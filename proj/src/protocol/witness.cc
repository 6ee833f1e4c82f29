#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <memory>

#include "codec.h"
#include "zkprov/common/io.h"
#include "zkprov/protocol/protocol.h"

namespace zkprov::protocol {

using namespace codec;

namespace {

constexpr std::string_view kWitnessMagic = "ZKPW1";
constexpr std::string_view kSealedMagic = "ZKPWENC1";
constexpr uint32_t kPbkdf2Iterations = 200000;
constexpr size_t kSaltBytes = 16, kIvBytes = 12, kTagBytes = 16, kKeyBytes = 32;

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

struct Key {
  std::array<uint8_t, kKeyBytes> bytes;
  ~Key() { OPENSSL_cleanse(bytes.data(), bytes.size()); }
};

void derive_key(std::string_view passphrase, std::span<const uint8_t> salt, uint32_t iterations, Key& key) {
  if (passphrase.empty()) throw std::invalid_argument("witness passphrase is empty");
  if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()), salt.data(),
                        static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(), kKeyBytes,
                        key.bytes.data()) != 1) {
    throw std::runtime_error("PBKDF2 failed");
  }
}

void check(int ok, const char* what) {
  if (ok != 1) throw std::runtime_error(std::string("AES-GCM: ") + what);
}

}  // namespace

Bytes WitnessSet::serialize() const {
  if (!diffs || !accumulator) throw std::logic_error("incomplete witness set");
  ByteWriter w;
  w.raw(kWitnessMagic);
  w.raw(setup_digest);
  w.u32(static_cast<uint32_t>(datasets.size()));
  for (const auto& d : datasets) {
    w.str(d.id);
    put_opening(w, d.meta);
    w.raw(d.sigma.to_bytes());
  }
  w.u32(static_cast<uint32_t>(selection.size()));
  for (uint32_t i : selection) w.u32(i);
  put(w, accumulator_blind.r0);
  put(w, accumulator_blind.r1);
  w.blob(diffs->serialize());
  w.u32(static_cast<uint32_t>(chunk_blinds.size()));
  for (const auto& b : chunk_blinds) put(w, b);
  put(w, slot_blind);
  put(w, base_model_value);
  put(w, base_model_blind);
  return w.take();
}

WitnessSet WitnessSet::deserialize(std::span<const uint8_t> data, const commitments::KzgParams& params) {
  try {
    ByteReader r(data);
    check_magic(r, kWitnessMagic);
    WitnessSet ws;
    auto d = r.take(32);
    std::copy(d.begin(), d.end(), ws.setup_digest.begin());
    uint32_t m = r.u32();
    for (uint32_t i = 0; i < m; ++i) {
      DatasetSecrets s;
      s.id = r.str();
      s.meta = get_opening(r);
      s.sigma = auth::Signature::from_bytes(r.take(algebra::kG1Bytes));
      ws.datasets.push_back(std::move(s));
    }
    uint32_t n = r.u32();
    std::vector<Fr> roots;
    for (uint32_t i = 0; i < n; ++i) {
      uint32_t idx = r.u32();
      if (idx >= ws.datasets.size()) throw DecodeError("selection index out of range");
      ws.selection.push_back(idx);
      roots.push_back(ws.datasets[idx].meta.rho);
    }
    ws.accumulator_blind.r0 = get_fr(r);
    ws.accumulator_blind.r1 = get_fr(r);
    ws.diffs = std::make_shared<weights::WeightDiffSet>(weights::WeightDiffSet::deserialize(r.blob()));
    uint32_t layers = r.u32();
    for (uint32_t j = 0; j < layers; ++j) ws.chunk_blinds.push_back(get_fr(r));
    ws.slot_blind = get_fr(r);
    ws.base_model_value = get_fr(r);
    ws.base_model_blind = get_fr(r);
    r.expect_end();
    ws.accumulator = std::make_shared<accumulators::TrainingAccumulator>(
        accumulators::TrainingAccumulator::build(params, roots, ws.accumulator_blind));
    return ws;
  } catch (const algebra::EncodingError& e) {
    throw DecodeError(e.what());
  }
}

void WitnessSet::save_encrypted(const std::filesystem::path& path, std::string_view passphrase) const {
  Bytes plain = serialize();
  std::array<uint8_t, kSaltBytes> salt;
  std::array<uint8_t, kIvBytes> iv;
  if (RAND_bytes(salt.data(), salt.size()) != 1 || RAND_bytes(iv.data(), iv.size()) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
  Key key;
  derive_key(passphrase, salt, kPbkdf2Iterations, key);

  ByteWriter out;
  out.raw(kSealedMagic);
  out.u32(kPbkdf2Iterations);
  out.raw(salt);
  out.raw(iv);
  const Bytes& header = out.bytes();

  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::bad_alloc();
  check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "init");
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kIvBytes, nullptr), "ivlen");
  check(EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.bytes.data(), iv.data()), "key");
  int len = 0;
  check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, header.data(), static_cast<int>(header.size())), "aad");
  Bytes cipher(plain.size() + kTagBytes);
  check(EVP_EncryptUpdate(ctx.get(), cipher.data(), &len, plain.data(), static_cast<int>(plain.size())), "update");
  int total = len;
  check(EVP_EncryptFinal_ex(ctx.get(), cipher.data() + total, &len), "final");
  total += len;
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes, cipher.data() + total), "tag");
  cipher.resize(total + kTagBytes);
  OPENSSL_cleanse(plain.data(), plain.size());

  out.raw(cipher);
  write_file(path, out.bytes(), std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
}

WitnessSet WitnessSet::load_encrypted(const std::filesystem::path& path, std::string_view passphrase,
                                      const commitments::KzgParams& params) {
  Bytes data = read_file(path);
  ByteReader r(data);
  check_magic(r, kSealedMagic);
  uint32_t iterations = r.u32();
  auto salt = r.take(kSaltBytes);
  auto iv = r.take(kIvBytes);
  size_t header_len = r.position();
  if (r.remaining() < kTagBytes) throw DecodeError("witness file truncated");
  auto body = r.take(r.remaining());
  auto cipher = body.first(body.size() - kTagBytes);
  auto tag = body.last(kTagBytes);

  Key key;
  derive_key(passphrase, salt, iterations, key);
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::bad_alloc();
  check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "init");
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kIvBytes, nullptr), "ivlen");
  check(EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.bytes.data(), iv.data()), "key");
  int len = 0;
  check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, data.data(), static_cast<int>(header_len)), "aad");
  Bytes plain(cipher.size());
  check(EVP_DecryptUpdate(ctx.get(), plain.data(), &len, cipher.data(), static_cast<int>(cipher.size())), "update");
  Bytes tag_copy(tag.begin(), tag.end());
  check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, tag_copy.data()), "tag");
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &len) != 1) {
    throw DecodeError("witness file authentication failed (wrong key or corrupted file)");
  }
  auto ws = deserialize(plain, params);
  OPENSSL_cleanse(plain.data(), plain.size());
  return ws;
}

}  // namespace zkprov::protocol
