#include "zkprov/zkproofs/transcript.h"

namespace zkprov::zkproofs {

namespace {

void put_blob(algebra::Sha256& h, std::span<const uint8_t> data) {
  uint8_t len[8];
  for (int i = 0; i < 8; ++i) len[i] = static_cast<uint8_t>(static_cast<uint64_t>(data.size()) >> (8 * i));
  h.update(std::span<const uint8_t>(len, 8));
  h.update(data);
}

}  // namespace

Transcript::Transcript(std::string_view domain) {
  algebra::Sha256 h;
  put_blob(h, as_bytes("zkprov-transcript-v1"));
  put_blob(h, as_bytes(domain));
  state_ = h.finish();
}

void Transcript::absorb(std::string_view label, std::span<const uint8_t> data) {
  algebra::Sha256 h;
  h.update(state_);
  put_blob(h, as_bytes(label));
  put_blob(h, data);
  state_ = h.finish();
}

void Transcript::absorb(std::string_view label, const Fr& x) { absorb(label, x.to_bytes_le()); }
void Transcript::absorb(std::string_view label, const G1& p) { absorb(label, algebra::g1_to_bytes(p)); }
void Transcript::absorb(std::string_view label, const algebra::G2& p) { absorb(label, algebra::g2_to_bytes(p)); }
void Transcript::absorb(std::string_view label, const algebra::GTElement& x) { absorb(label, x.to_bytes()); }

void Transcript::absorb_u64(std::string_view label, uint64_t v) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
  absorb(label, std::span<const uint8_t>(b, 8));
}

Fr Transcript::challenge(std::string_view label) {
  ByteWriter w;
  w.raw(state_);
  w.str(label);
  w.u64(counter_++);
  Fr c = algebra::hash_to_field(w.bytes(), algebra::kKappaTranscript);
  absorb("challenge", c);
  return c;
}

Transcript Transcript::fork(std::string_view label) const {
  Transcript child;
  algebra::Sha256 h;
  h.update(state_);
  put_blob(h, as_bytes("fork"));
  put_blob(h, as_bytes(label));
  child.state_ = h.finish();
  return child;
}

}  // namespace zkprov::zkproofs
