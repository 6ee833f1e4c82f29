#pragma once

#include "zkprov/common/bytes.h"
#include "zkprov/zkproofs/statement.h"

namespace zkprov::protocol::codec {

using algebra::Fr;
using algebra::G1;

inline void put(ByteWriter& w, const Fr& x) { w.raw(x.to_bytes_le()); }
inline void put(ByteWriter& w, const G1& p) { w.raw(algebra::g1_to_bytes(p)); }
inline Fr get_fr(ByteReader& r) { return Fr::from_bytes_le(r.take(32)); }
inline G1 get_g1(ByteReader& r) { return algebra::g1_from_bytes(r.take(algebra::kG1Bytes)); }

inline void check_magic(ByteReader& r, std::string_view magic) {
  auto m = r.take(magic.size());
  if (!std::equal(m.begin(), m.end(), magic.begin())) throw DecodeError("bad magic, expected " + std::string(magic));
}

inline void put_opening(ByteWriter& w, const zkproofs::MetadataOpening& m) {
  put(w, m.rho);
  put(w, m.rho_blind);
  put(w, m.id);
  put(w, m.id_blind);
  w.u32(static_cast<uint32_t>(m.attributes.size()));
  for (const auto& a : m.attributes) w.str(a);
  w.str(m.salt);
  put(w, m.a_blind.r0);
  put(w, m.a_blind.r1);
}

inline zkproofs::MetadataOpening get_opening(ByteReader& r) {
  zkproofs::MetadataOpening m;
  m.rho = get_fr(r);
  m.rho_blind = get_fr(r);
  m.id = get_fr(r);
  m.id_blind = get_fr(r);
  uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) m.attributes.insert(r.str());
  m.salt = r.str();
  m.a_blind.r0 = get_fr(r);
  m.a_blind.r1 = get_fr(r);
  m.a = zkproofs::dataset_polynomial(m.attributes, m.salt);
  return m;
}

inline void put_commitment(ByteWriter& w, const zkproofs::MetadataCommitment& c) {
  put(w, c.c_rho);
  put(w, c.c_a);
  put(w, c.c_id);
}

inline zkproofs::MetadataCommitment get_commitment(ByteReader& r) {
  zkproofs::MetadataCommitment c;
  c.c_rho = get_g1(r);
  c.c_a = get_g1(r);
  c.c_id = get_g1(r);
  return c;
}

}  // namespace zkprov::protocol::codec
