#include "zkprov/zkproofs/bundle.h"

#include "zkprov/common/io.h"

namespace zkprov::zkproofs {

namespace {

constexpr std::string_view kMagic = "ZKPPRF1";
constexpr uint32_t kVersion = 1;

void put(ByteWriter& w, const Fr& x) { w.raw(x.to_bytes_le()); }
void put(ByteWriter& w, const G1& p) { w.raw(algebra::g1_to_bytes(p)); }
void put(ByteWriter& w, const std::vector<Fr>& xs) {
  w.u32(static_cast<uint32_t>(xs.size()));
  for (const auto& x : xs) put(w, x);
}
void put(ByteWriter& w, const std::vector<G1>& ps) {
  w.u32(static_cast<uint32_t>(ps.size()));
  for (const auto& p : ps) put(w, p);
}

Fr get_fr(ByteReader& r) { return Fr::from_bytes_le(r.take(32)); }
G1 get_g1(ByteReader& r) { return algebra::g1_from_bytes(r.take(algebra::kG1Bytes)); }
std::vector<Fr> get_frs(ByteReader& r) {
  uint32_t n = r.u32();
  if (static_cast<size_t>(n) * 32 > r.remaining()) throw DecodeError("scalar list longer than input");
  std::vector<Fr> xs(n);
  for (auto& x : xs) x = get_fr(r);
  return xs;
}
std::vector<G1> get_g1s(ByteReader& r) {
  uint32_t n = r.u32();
  if (static_cast<size_t>(n) * algebra::kG1Bytes > r.remaining()) throw DecodeError("point list longer than input");
  std::vector<G1> ps(n);
  for (auto& p : ps) p = get_g1(r);
  return ps;
}

Bytes encode_sigma(const SignatureProof& p) {
  ByteWriter w;
  w.raw(p.sigma.to_bytes());
  for (const Fr* x : {&p.e, &p.s_rho, &p.s_rho_blind, &p.s_id, &p.s_id_blind}) put(w, *x);
  put(w, p.s_a);
  put(w, p.s_a_r0);
  put(w, p.s_a_r1);
  return w.take();
}

SignatureProof decode_sigma(ByteReader r) {
  SignatureProof p;
  p.sigma = auth::Signature::from_bytes(r.take(algebra::kG1Bytes));
  for (Fr* x : {&p.e, &p.s_rho, &p.s_rho_blind, &p.s_id, &p.s_id_blind}) *x = get_fr(r);
  p.s_a = get_frs(r);
  p.s_a_r0 = get_fr(r);
  p.s_a_r1 = get_fr(r);
  r.expect_end();
  return p;
}

Bytes encode_tr(const MembershipProof& p) {
  ByteWriter w;
  put(w, p.w);
  for (const Fr* x : {&p.e, &p.s_rho, &p.s_epsilon, &p.s_rho_blind}) put(w, *x);
  return w.take();
}

MembershipProof decode_tr(ByteReader r) {
  MembershipProof p;
  p.w = get_g1(r);
  for (Fr* x : {&p.e, &p.s_rho, &p.s_epsilon, &p.s_rho_blind}) *x = get_fr(r);
  r.expect_end();
  return p;
}

Bytes encode_bind(const SlotProof& p) {
  ByteWriter w;
  put(w, p.e);
  put(w, p.s);
  return w.take();
}

SlotProof decode_bind(ByteReader r) {
  SlotProof p;
  p.e = get_fr(r);
  p.s = get_fr(r);
  r.expect_end();
  return p;
}

Bytes encode_brec(const BindingValueProof& p) {
  ByteWriter w;
  w.reserve(64 + 32 * (p.z.size() + 4 * p.z_blind.size()));
  put(w, p.fold_challenges);
  put(w, p.a_chunks);
  put(w, p.a_b);
  put(w, p.z);
  put(w, p.z_blind);
  put(w, p.z_b);
  put(w, p.z_b_blind);
  return w.take();
}

BindingValueProof decode_brec(ByteReader r) {
  BindingValueProof p;
  p.fold_challenges = get_frs(r);
  p.a_chunks = get_g1s(r);
  p.a_b = get_g1(r);
  p.z = get_frs(r);
  p.z_blind = get_frs(r);
  p.z_b = get_frs(r);
  p.z_b_blind = get_fr(r);
  r.expect_end();
  return p;
}

Bytes encode_match(const AttributeProof& p) {
  ByteWriter w;
  put(w, p.c_q);
  put(w, p.w);
  put(w, p.blind_eval);
  return w.take();
}

AttributeProof decode_match(ByteReader r) {
  AttributeProof p;
  p.c_q = get_g1(r);
  p.w = get_g1(r);
  p.blind_eval = get_fr(r);
  r.expect_end();
  return p;
}

Verdict fail(Reason r) { return Verdict{1u << static_cast<unsigned>(r)}; }

}  // namespace

std::string_view reason_name(Reason r) {
  switch (r) {
    case Reason::kSignature: return "signature";
    case Reason::kMembership: return "membership";
    case Reason::kBinding: return "binding";
    case Reason::kBindingValues: return "binding-values";
    case Reason::kAttributes: return "attributes";
    case Reason::kMalformed: return "malformed";
  }
  return "unknown";
}

std::optional<Reason> Verdict::primary() const {
  for (Reason r : {Reason::kMalformed, Reason::kBindingValues, Reason::kSignature, Reason::kMembership,
                   Reason::kBinding, Reason::kAttributes}) {
    if (has(r)) return r;
  }
  return std::nullopt;
}

std::string Verdict::describe() const {
  if (accepted()) return "accept";
  std::string s = "reject(" + std::string(reason_name(*primary())) + ")";
  std::string all;
  for (unsigned i = 0; i <= static_cast<unsigned>(Reason::kMalformed); ++i) {
    if (has(static_cast<Reason>(i))) all += (all.empty() ? "" : ",") + std::string(reason_name(static_cast<Reason>(i)));
  }
  return s + " failed=" + all;
}

Bytes ProofBundle::serialize() const {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.u32(kReasonTableVersion);
  w.u32(dataset_index);
  w.blob(encode_sigma(sigma));
  w.blob(encode_tr(tr));
  w.blob(encode_bind(bind));
  w.blob(encode_brec(b_rec));
  w.blob(encode_match(match));
  put(w, c_b);
  return seal(std::move(w));
}

ProofBundle ProofBundle::deserialize(std::span<const uint8_t> data) {
  try {
    auto body = unseal(data);
    ByteReader r(body);
    auto magic = r.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw DecodeError("bad proof magic");
    if (r.u32() != kVersion) throw DecodeError("unsupported proof version");
    if (r.u32() != kReasonTableVersion) throw DecodeError("unsupported reason table version");
    ProofBundle b;
    b.dataset_index = r.u32();
    b.sigma = decode_sigma(ByteReader(r.blob()));
    b.tr = decode_tr(ByteReader(r.blob()));
    b.bind = decode_bind(ByteReader(r.blob()));
    b.b_rec = decode_brec(ByteReader(r.blob()));
    b.match = decode_match(ByteReader(r.blob()));
    b.c_b = get_g1(r);
    r.expect_end();
    return b;
  } catch (const algebra::EncodingError& e) {
    throw DecodeError(e.what());
  }
}

Transcript bundle_transcript(const Fr& seed, uint32_t index) {
  Transcript t("ZKPROV/bundle");
  t.absorb("seed", seed);
  t.absorb_u64("dataset", index);
  return t;
}

ProofBundle prove_bundle(const Statement& st, uint32_t index, const ProverWitness& wit,
                         const std::set<std::string>& att_p, std::string_view prompt, std::string_view response,
                         RandomSource& rng) {
  if (index >= st.datasets.size()) throw std::out_of_range("dataset index");
  if (!wit.accumulator || !wit.diffs) throw std::invalid_argument("prover witness incomplete");
  const auto& params = *st.srs;
  const auto& d = st.datasets[index];
  const auto& w = *wit.diffs;
  if (w.layers() != st.layers || w.chunk_length() != st.chunk_length) {
    throw std::invalid_argument("weight diffs do not match the committed layout");
  }

  // The seed depends on r, so it can only be computed once the response is fixed.
  Fr seed = weights::derive_seed(st.seed_inputs(index, att_p, prompt, response));
  auto v = challenge_vectors(seed, st.layers, st.chunk_length);
  auto bv = weights::compute_binding_values(w, v);
  Fr b_blind = rng.scalar();

  Transcript root = bundle_transcript(seed, index);
  ProofBundle pi;
  pi.dataset_index = index;
  pi.c_b = commit_binding_values(bv.b, b_blind);
  pi.sigma = prove_signature(params, st.pk_ca, d.meta, wit.meta, wit.sigma, root.fork("sigma"), rng);
  pi.tr = prove_membership(params, *wit.accumulator, d.meta.c_rho, wit.meta.rho, wit.meta.rho_blind,
                           root.fork("tr"), rng);
  pi.bind = prove_slot(st.r_tr, st.slot_commitment, wit.slot_held, wit.slot_blind, root.fork("bind"), rng);
  pi.b_rec = prove_binding_values(w, wit.chunk_blinds, st.chunk_commitments, v, bv.b, b_blind, pi.c_b,
                                  root.fork("brec"), rng);
  pi.match = prove_attribute_match(params, d.meta.c_a, wit.meta.a, wit.meta.a_blind, att_p, root.fork("match"), rng);
  return pi;
}

Verdict verify_bundle(const Statement& st, const std::set<std::string>& att_p, std::string_view prompt,
                      std::string_view response, const ProofBundle& pi) {
  if (pi.dataset_index >= st.datasets.size() || !st.srs) return fail(Reason::kMalformed);
  const auto& b = pi.b_rec;
  if (b.z.size() != st.layers * st.chunk_length || b.a_chunks.size() != st.layers ||
      pi.sigma.s_a.size() != st.srs->degree + 1) {
    return fail(Reason::kMalformed);
  }
  const auto& params = *st.srs;
  const auto& d = st.datasets[pi.dataset_index];
  Fr seed = weights::derive_seed(st.seed_inputs(pi.dataset_index, att_p, prompt, response));
  auto v = challenge_vectors(seed, st.layers, st.chunk_length);
  Transcript root = bundle_transcript(seed, pi.dataset_index);

  Verdict out;
  auto mark = [&](bool ok, Reason r) {
    if (!ok) out.failed |= 1u << static_cast<unsigned>(r);
  };
  mark(verify_signature(params, st.pk_ca, d, pi.sigma, root.fork("sigma")), Reason::kSignature);
  mark(verify_membership(params, st.r_tr, d.meta.c_rho, pi.tr, root.fork("tr")), Reason::kMembership);
  mark(verify_slot(st.r_tr, st.slot_commitment, pi.bind, root.fork("bind")), Reason::kBinding);
  mark(verify_binding_values(st.chunk_commitments, st.chunk_length, v, pi.c_b, b, root.fork("brec")),
       Reason::kBindingValues);
  mark(verify_attribute_match(params, d.meta.c_a, att_p, pi.match, root.fork("match")), Reason::kAttributes);
  return out;
}

Verdict verify_bundle_bytes(const Statement& st, const std::set<std::string>& att_p, std::string_view prompt,
                            std::string_view response, std::span<const uint8_t> bundle) {
  ProofBundle pi;
  try {
    pi = ProofBundle::deserialize(bundle);
  } catch (const DecodeError&) {
    return fail(Reason::kMalformed);
  }
  return verify_bundle(st, att_p, prompt, response, pi);
}

}  // namespace zkprov::zkproofs
