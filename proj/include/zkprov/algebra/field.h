#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zkprov::algebra {

using Limbs = std::array<uint64_t, 4>;

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool limbs_less(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

#if defined(__x86_64__)
// a -= b, returns borrow.
inline uint64_t limbs_sub(Limbs& a, const Limbs& b) {
  unsigned char borrow = 0;
  unsigned long long r;
  for (int i = 0; i < 4; ++i) {
    borrow = __builtin_ia32_sbb_u64(borrow, a[i], b[i], &r);
    a[i] = r;
  }
  return borrow;
}

// a += b, returns carry.
inline uint64_t limbs_add(Limbs& a, const Limbs& b) {
  unsigned char carry = 0;
  unsigned long long r;
  for (int i = 0; i < 4; ++i) {
    carry = __builtin_ia32_addcarryx_u64(carry, a[i], b[i], &r);
    a[i] = r;
  }
  return carry;
}
#else
inline uint64_t limbs_sub(Limbs& a, const Limbs& b) {
  unsigned __int128 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 d = static_cast<unsigned __int128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<uint64_t>(d);
    borrow = (d >> 64) & 1;
  }
  return static_cast<uint64_t>(borrow);
}

inline uint64_t limbs_add(Limbs& a, const Limbs& b) {
  unsigned __int128 carry = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 s = static_cast<unsigned __int128>(a[i]) + b[i] + carry;
    a[i] = static_cast<uint64_t>(s);
    carry = s >> 64;
  }
  return static_cast<uint64_t>(carry);
}
#endif

// a = borrow ? a : b, without branching.
inline void select(Limbs& a, const Limbs& b, uint64_t borrow) {
  uint64_t mask = 0 - borrow;
  for (int i = 0; i < 4; ++i) a[i] = (a[i] & mask) | (b[i] & ~mask);
}

#if defined(__x86_64__) && defined(__BMI2__) && defined(__ADX__)
#define ZKPROV_HAVE_ADX 1
// Montgomery product with mulx/adcx/adox; result in [0, 2m).
inline void mont_mul_adx(uint64_t* r, const uint64_t* a, const uint64_t* b, const uint64_t* m, uint64_t inv) {
  uint64_t t0, t1, t2, t3, t4;
#define ZKPROV_MONT_ROUND(OFF, A0, A1, A2, A3, A4) \
  "movq " OFF "(%[b]), %%rdx\n\t"                 \
  "xorl %%eax, %%eax\n\t"                         \
  "mulxq 0(%[a]), %%r8, %%r9\n\t"                 \
  "adcxq %%r8, %[" A0 "]\n\t"                     \
  "adoxq %%r9, %[" A1 "]\n\t"                     \
  "mulxq 8(%[a]), %%r8, %%r9\n\t"                 \
  "adcxq %%r8, %[" A1 "]\n\t"                     \
  "adoxq %%r9, %[" A2 "]\n\t"                     \
  "mulxq 16(%[a]), %%r8, %%r9\n\t"                \
  "adcxq %%r8, %[" A2 "]\n\t"                     \
  "adoxq %%r9, %[" A3 "]\n\t"                     \
  "mulxq 24(%[a]), %%r8, %[" A4 "]\n\t"           \
  "adcxq %%r8, %[" A3 "]\n\t"                     \
  "adoxq %%rax, %[" A4 "]\n\t"                    \
  "adcxq %%rax, %[" A4 "]\n\t"                    \
  ZKPROV_MONT_REDUCE(A0, A1, A2, A3, A4)
#define ZKPROV_MONT_REDUCE(A0, A1, A2, A3, A4) \
  "movq %[" A0 "], %%rdx\n\t"                 \
  "imulq %[inv], %%rdx\n\t"                   \
  "xorl %%eax, %%eax\n\t"                     \
  "mulxq 0(%[m]), %%r8, %%r9\n\t"             \
  "adcxq %%r8, %[" A0 "]\n\t"                 \
  "adoxq %%r9, %[" A1 "]\n\t"                 \
  "mulxq 8(%[m]), %%r8, %%r9\n\t"             \
  "adcxq %%r8, %[" A1 "]\n\t"                 \
  "adoxq %%r9, %[" A2 "]\n\t"                 \
  "mulxq 16(%[m]), %%r8, %%r9\n\t"            \
  "adcxq %%r8, %[" A2 "]\n\t"                 \
  "adoxq %%r9, %[" A3 "]\n\t"                 \
  "mulxq 24(%[m]), %%r8, %%r9\n\t"            \
  "adcxq %%r8, %[" A3 "]\n\t"                 \
  "adoxq %%r9, %[" A4 "]\n\t"                 \
  "adcxq %%rax, %[" A4 "]\n\t"
  __asm__(
      "movq 0(%[b]), %%rdx\n\t"
      "xorl %%eax, %%eax\n\t"
      "mulxq 0(%[a]), %[t0], %[t1]\n\t"
      "mulxq 8(%[a]), %%r8, %[t2]\n\t"
      "adcxq %%r8, %[t1]\n\t"
      "mulxq 16(%[a]), %%r8, %[t3]\n\t"
      "adcxq %%r8, %[t2]\n\t"
      "mulxq 24(%[a]), %%r8, %[t4]\n\t"
      "adcxq %%r8, %[t3]\n\t"
      "adcxq %%rax, %[t4]\n\t"
      ZKPROV_MONT_REDUCE("t0", "t1", "t2", "t3", "t4")
      ZKPROV_MONT_ROUND("8", "t1", "t2", "t3", "t4", "t0")
      ZKPROV_MONT_ROUND("16", "t2", "t3", "t4", "t0", "t1")
      ZKPROV_MONT_ROUND("24", "t3", "t4", "t0", "t1", "t2")
      : [t0] "=&r"(t0), [t1] "=&r"(t1), [t2] "=&r"(t2), [t3] "=&r"(t3), [t4] "=&r"(t4)
      : [a] "r"(a), [b] "r"(b), [m] "r"(m), [inv] "m"(inv)
      : "rax", "rdx", "r8", "r9", "cc", "memory");
#undef ZKPROV_MONT_ROUND
#undef ZKPROV_MONT_REDUCE
  r[0] = t4;
  r[1] = t0;
  r[2] = t1;
  r[3] = t2;
}
#endif

}  // namespace detail

// Prime field element in Montgomery form over a 4-limb modulus below 2^255.
// Params supplies kModulus, kR2 (R^2 mod m), kOne (R mod m) and kInv
// (-m^-1 mod 2^64).
template <class Params>
class MontField {
 public:
  static constexpr size_t kBytes = 32;

  constexpr MontField() : l_{0, 0, 0, 0} {}

  static MontField zero() { return MontField(); }
  static MontField one() { return from_mont(Params::kOne); }

  static MontField from_u64(uint64_t v) { return from_canonical_unchecked({v, 0, 0, 0}); }

  static MontField from_i64(int64_t v) {
    if (v >= 0) return from_u64(static_cast<uint64_t>(v));
    // Two's complement magnitude avoids overflow at INT64_MIN.
    uint64_t mag = ~static_cast<uint64_t>(v) + 1;
    return -from_u64(mag);
  }

  // Value must be < modulus.
  static MontField from_canonical_unchecked(const Limbs& v) {
    MontField r = from_mont(v);
    return r * from_mont(Params::kR2);
  }

  // Reduces any 256-bit integer modulo m.
  static MontField from_limbs_reduce(Limbs v) {
    while (!detail::limbs_less(v, Params::kModulus)) detail::limbs_sub(v, Params::kModulus);
    return from_canonical_unchecked(v);
  }

  // Little-endian 32 bytes; rejects values >= modulus.
  static MontField from_bytes_le(std::span<const uint8_t> in) {
    if (in.size() != kBytes) throw EncodingError("field element must be 32 bytes");
    Limbs v{};
    for (size_t i = 0; i < 4; ++i) {
      uint64_t w = 0;
      for (size_t b = 0; b < 8; ++b) w |= static_cast<uint64_t>(in[i * 8 + b]) << (8 * b);
      v[i] = w;
    }
    if (!detail::limbs_less(v, Params::kModulus)) {
      throw EncodingError("non-canonical field element");
    }
    return from_canonical_unchecked(v);
  }

  // Interprets 64 bytes as a big-endian integer and reduces it mod m.
  static MontField from_wide_be(std::span<const uint8_t, 64> in) {
    Limbs hi{}, lo{};
    for (size_t i = 0; i < 4; ++i) {
      uint64_t wh = 0, wl = 0;
      for (size_t b = 0; b < 8; ++b) {
        wh = (wh << 8) | in[(3 - i) * 8 + b];
        wl = (wl << 8) | in[32 + (3 - i) * 8 + b];
      }
      hi[i] = wh;
      lo[i] = wl;
    }
    // hi * 2^256 + lo; R2 as a Montgomery value equals R = 2^256 mod m.
    return from_limbs_reduce(hi) * from_mont(Params::kR2) + from_limbs_reduce(lo);
  }

  Limbs to_canonical() const {
    MontField t = *this * from_mont({1, 0, 0, 0});
    return t.l_;
  }

  std::array<uint8_t, kBytes> to_bytes_le() const {
    std::array<uint8_t, kBytes> out{};
    write_le(out);
    return out;
  }

  void write_le(std::span<uint8_t> out) const {
    Limbs c = to_canonical();
    for (size_t i = 0; i < 4; ++i) {
      for (size_t b = 0; b < 8; ++b) out[i * 8 + b] = static_cast<uint8_t>(c[i] >> (8 * b));
    }
  }

  std::string to_hex() const {
    static const char* kDigits = "0123456789abcdef";
    Limbs c = to_canonical();
    std::string s;
    for (int i = 3; i >= 0; --i) {
      for (int n = 15; n >= 0; --n) s.push_back(kDigits[(c[i] >> (4 * n)) & 0xf]);
    }
    return s;
  }

  static const Limbs& modulus() { return Params::kModulus; }

  bool is_zero() const { return (l_[0] | l_[1] | l_[2] | l_[3]) == 0; }
  bool is_one() const { return l_ == Params::kOne; }

  friend bool operator==(const MontField& a, const MontField& b) { return a.l_ == b.l_; }
  friend bool operator!=(const MontField& a, const MontField& b) { return a.l_ != b.l_; }

  MontField& operator+=(const MontField& o) {
    // Both moduli are below 2^254, so the sum cannot overflow 256 bits.
    detail::limbs_add(l_, o.l_);
    Limbs t = l_;
    uint64_t borrow = detail::limbs_sub(t, Params::kModulus);
    detail::select(l_, t, borrow);
    return *this;
  }

  MontField& operator-=(const MontField& o) {
    uint64_t borrow = detail::limbs_sub(l_, o.l_);
    Limbs m = Params::kModulus;
    uint64_t mask = 0 - borrow;
    for (auto& v : m) v &= mask;
    detail::limbs_add(l_, m);
    return *this;
  }

  MontField operator-() const { return zero() - *this; }

  MontField& operator*=(const MontField& o) {
    l_ = mont_mul(l_, o.l_);
    return *this;
  }

  friend MontField operator+(MontField a, const MontField& b) { return a += b; }
  friend MontField operator-(MontField a, const MontField& b) { return a -= b; }
  friend MontField operator*(MontField a, const MontField& b) { return a *= b; }

  MontField square() const { return *this * *this; }
  MontField dbl() const { return *this + *this; }

  // Exponent given as little-endian limbs.
  template <size_t N>
  MontField pow(const std::array<uint64_t, N>& e) const {
    MontField acc = one();
    for (int i = static_cast<int>(N) - 1; i >= 0; --i) {
      for (int b = 63; b >= 0; --b) {
        acc = acc.square();
        if ((e[i] >> b) & 1) acc *= *this;
      }
    }
    return acc;
  }

  MontField inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Limbs e = Params::kModulus;
    e[0] -= 2;  // modulus is odd and > 2
    return pow(e);
  }

  // Raw Montgomery limbs, for hashing into containers and fast paths.
  const Limbs& mont_limbs() const { return l_; }
  static MontField from_mont(const Limbs& v) {
    MontField r;
    r.l_ = v;
    return r;
  }

 private:
  // CIOS without the extra carry word; valid because the top modulus limb
  // leaves the highest bit free (both moduli are below 2^254).
  static Limbs mont_mul(const Limbs& a, const Limbs& b) {
#ifdef ZKPROV_HAVE_ADX
    Limbs r, t;
    detail::mont_mul_adx(r.data(), a.data(), b.data(), Params::kModulus.data(), Params::kInv);
    t = r;
    detail::select(r, t, detail::limbs_sub(t, Params::kModulus));
    return r;
#else
    using u128 = unsigned __int128;
    const Limbs& m = Params::kModulus;
    uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0;
    for (int i = 0; i < 4; ++i) {
      const uint64_t bi = b[i];
      u128 x = static_cast<u128>(a[0]) * bi + t0;
      uint64_t carry_a = static_cast<uint64_t>(x >> 64);
      t0 = static_cast<uint64_t>(x);
      const uint64_t k = t0 * Params::kInv;
      u128 y = static_cast<u128>(k) * m[0] + t0;
      uint64_t carry_m = static_cast<uint64_t>(y >> 64);

      x = static_cast<u128>(a[1]) * bi + t1 + carry_a;
      carry_a = static_cast<uint64_t>(x >> 64);
      y = static_cast<u128>(k) * m[1] + static_cast<uint64_t>(x) + carry_m;
      carry_m = static_cast<uint64_t>(y >> 64);
      t0 = static_cast<uint64_t>(y);

      x = static_cast<u128>(a[2]) * bi + t2 + carry_a;
      carry_a = static_cast<uint64_t>(x >> 64);
      y = static_cast<u128>(k) * m[2] + static_cast<uint64_t>(x) + carry_m;
      carry_m = static_cast<uint64_t>(y >> 64);
      t1 = static_cast<uint64_t>(y);

      x = static_cast<u128>(a[3]) * bi + t3 + carry_a;
      carry_a = static_cast<uint64_t>(x >> 64);
      y = static_cast<u128>(k) * m[3] + static_cast<uint64_t>(x) + carry_m;
      carry_m = static_cast<uint64_t>(y >> 64);
      t2 = static_cast<uint64_t>(y);

      t3 = carry_a + carry_m;
    }
    Limbs r{t0, t1, t2, t3};
    if (!detail::limbs_less(r, m)) detail::limbs_sub(r, m);
    return r;
#endif
  }

  Limbs l_;
};

struct FqParams {
  static constexpr Limbs kModulus{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr Limbs kR2{0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL,
                             0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
  static constexpr Limbs kOne{0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL,
                              0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
  static constexpr uint64_t kInv = 0x87d20782e4866389ULL;
};

struct FrParams {
  static constexpr Limbs kModulus{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr Limbs kR2{0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                             0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
  static constexpr Limbs kOne{0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                              0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
  static constexpr uint64_t kInv = 0xc2e1f593efffffffULL;
};

// Base field of BN254.
using Fq = MontField<FqParams>;
// Scalar field of BN254 (group order of G1, G2 and GT).
using Fr = MontField<FrParams>;
using ScalarField = Fr;

// Square root in Fq (q = 3 mod 4). Returns false if a is a non-residue.
bool fq_sqrt(const Fq& a, Fq& out);

// True when the canonical value exceeds (q-1)/2.
bool fq_is_lexicographically_largest(const Fq& a);

// Batch inversion; zero entries stay zero.
template <class F>
void batch_invert(std::span<F> values) {
  if (values.empty()) return;
  std::vector<F> prefix(values.size());
  F acc = F::one();
  for (size_t i = 0; i < values.size(); ++i) {
    prefix[i] = acc;
    if (!values[i].is_zero()) acc *= values[i];
  }
  F inv = acc.inverse();
  for (size_t i = values.size(); i-- > 0;) {
    if (values[i].is_zero()) continue;
    F next = inv * values[i];
    values[i] = inv * prefix[i];
    inv = next;
  }
}

}  // namespace zkprov::algebra
