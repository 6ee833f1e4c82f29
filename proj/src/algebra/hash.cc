#include "zkprov/algebra/hash.h"

#include <stdexcept>
#include <vector>

namespace zkprov::algebra {

namespace {

std::array<uint8_t, 64> expand(std::span<const uint8_t> msg, std::string_view dst) {
  if (dst.empty() || dst.size() > 255) throw std::invalid_argument("domain separator must be 1..255 bytes");
  std::array<uint8_t, 64> wide{};
  for (uint8_t i = 0; i < 2; ++i) {
    uint8_t len = static_cast<uint8_t>(dst.size());
    Sha256 h;
    h.update(std::span<const uint8_t>(&len, 1));
    h.update(dst);
    h.update(std::span<const uint8_t>(&i, 1));
    h.update(msg);
    Digest d = h.finish();
    std::copy(d.begin(), d.end(), wide.begin() + 32 * i);
  }
  return wide;
}

}  // namespace

Digest sha256(std::span<const uint8_t> data) { return Sha256().update(data).finish(); }

Fr hash_to_field(std::span<const uint8_t> msg, std::string_view dst) {
  auto wide = expand(msg, dst);
  return Fr::from_wide_be(wide);
}

Fq hash_to_base(std::span<const uint8_t> msg, std::string_view dst) {
  auto wide = expand(msg, dst);
  return Fq::from_wide_be(wide);
}

G1 hash_to_g1(std::span<const uint8_t> msg, std::string_view dst) {
  std::vector<uint8_t> buf(msg.size() + 1);
  std::copy(msg.begin(), msg.end(), buf.begin() + 1);
  for (unsigned ctr = 0; ctr < 256; ++ctr) {
    buf[0] = static_cast<uint8_t>(ctr);
    Fq x = hash_to_base(buf, dst);
    Fq y;
    if (!fq_sqrt(x.square() * x + G1Curve::b(), y)) continue;
    if (fq_is_lexicographically_largest(y)) y = -y;
    return G1(G1Affine{x, y, false});
  }
  // Probability 2^-256.
  throw std::runtime_error("hash_to_g1: no curve point found");
}

}  // namespace zkprov::algebra
