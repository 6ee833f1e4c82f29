#include "zkprov/algebra/msm.h"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "zkprov/common/parallel.h"

namespace zkprov::algebra {

namespace {

constexpr int kScalarBits = 254;
constexpr size_t kBatch = 1024;

int windows_for(int bits, int c) { return (bits + 1 + c - 1) / c; }

size_t batch_capacity(size_t buckets) { return std::clamp<size_t>(buckets / 8, 16, kBatch); }

// Cost in units of one batched affine addition: every entry costs one unit
// plus its share of a batch inversion (~30 units), and reducing a bucket costs
// about four units of Jacobian arithmetic.
int choose_window(size_t n, int bits) {
  int best = 2;
  double best_cost = 1e300;
  for (int c = 2; c <= 20; ++c) {
    double buckets = static_cast<double>(1ULL << (c - 1));
    double per_entry = 1.0 + 30.0 / static_cast<double>(batch_capacity(1ULL << (c - 1)));
    double cost = windows_for(bits, c) * (static_cast<double>(n) * per_entry + 4.0 * buckets);
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  return best;
}

// Signed base-2^c digits in [-2^{c-1}, 2^{c-1}], least significant first.
void signed_digits(const Limbs& k, int c, int windows, int32_t* out) {
  const int64_t half = int64_t{1} << (c - 1);
  const uint64_t mask = (uint64_t{1} << c) - 1;
  int64_t carry = 0;
  for (int w = 0; w < windows; ++w) {
    int bit = w * c;
    uint64_t raw = 0;
    if (bit < 256) {
      int limb = bit / 64, off = bit % 64;
      raw = k[limb] >> off;
      if (off + c > 64 && limb + 1 < 4) raw |= k[limb + 1] << (64 - off);
      raw &= mask;
    }
    int64_t d = static_cast<int64_t>(raw) + carry;
    if (d > half) {
      d -= int64_t{1} << c;
      carry = 1;
    } else {
      carry = 0;
    }
    out[w] = static_cast<int32_t>(d);
  }
}

// Buckets live in affine form and are updated in batches sharing one field
// inversion. An entry whose bucket already sits in the pending batch goes to a
// Jacobian overflow accumulator instead, so repeated digits stay linear.
template <class Point>
class BucketSet {
 public:
  using Affine = typename Point::Affine;
  using F = typename Point::F;

  explicit BucketSet(size_t count)
      : buckets_(count), overflow_(count), busy_(count, 0), capacity_(batch_capacity(count)) {
    batch_.reserve(capacity_);
    denoms_.resize(capacity_);
    prefix_.resize(capacity_);
  }

  void reset() {
    for (auto& b : buckets_) b.infinity = true;
    std::fill(overflow_.begin(), overflow_.end(), Point::identity());
  }

  void add(uint32_t bucket, const Affine& p) {
    if (busy_[bucket]) {
      overflow_[bucket] = overflow_[bucket].add_affine(p);
      return;
    }
    Affine& q = buckets_[bucket];
    if (q.infinity) {
      q = p;
      return;
    }
    busy_[bucket] = 1;
    batch_.push_back({bucket, p});
    if (batch_.size() == capacity_) flush();
  }

  // sum_b (b + 1) * bucket[b]; call after the last add.
  Point finish() {
    flush();
    Point running, sum;
    for (size_t b = buckets_.size(); b-- > 0;) {
      running = running.add_affine(buckets_[b]);
      if (!overflow_[b].is_identity()) running += overflow_[b];
      sum += running;
    }
    return sum;
  }

 private:
  struct Entry {
    uint32_t bucket;
    Affine point;
  };

  void flush() {
    const size_t m = batch_.size();
    if (m == 0) return;
    // Denominators: x_p - x_q for additions, 2 y for doublings, 1 for P + (-P).
    for (size_t i = 0; i < m; ++i) {
      const Affine& q = buckets_[batch_[i].bucket];
      const Affine& p = batch_[i].point;
      if (p.x != q.x) {
        denoms_[i] = p.x - q.x;
      } else if (p.y == q.y && !p.y.is_zero()) {
        denoms_[i] = p.y.dbl();
      } else {
        denoms_[i] = F::one();
      }
    }
    // Montgomery batch inversion.
    F acc = F::one();
    for (size_t i = 0; i < m; ++i) {
      prefix_[i] = acc;
      acc = acc * denoms_[i];
    }
    F inv = acc.inverse();
    for (size_t i = m; i-- > 0;) {
      F d = denoms_[i];
      denoms_[i] = inv * prefix_[i];
      inv = inv * d;
    }
    for (size_t i = 0; i < m; ++i) {
      Affine& q = buckets_[batch_[i].bucket];
      const Affine& p = batch_[i].point;
      busy_[batch_[i].bucket] = 0;
      F lambda;
      if (p.x != q.x) {
        lambda = (p.y - q.y) * denoms_[i];
      } else if (p.y == q.y && !p.y.is_zero()) {
        F x2 = q.x.square();
        lambda = (x2.dbl() + x2) * denoms_[i];
      } else {
        q.infinity = true;
        continue;
      }
      F x3 = lambda.square() - q.x - p.x;
      q.y = lambda * (q.x - x3) - q.y;
      q.x = x3;
    }
    batch_.clear();
  }

  std::vector<Affine> buckets_;
  std::vector<Point> overflow_;
  std::vector<uint8_t> busy_;
  size_t capacity_;
  std::vector<Entry> batch_;
  std::vector<F> denoms_;
  std::vector<F> prefix_;
};

template <class Point>
Point pippenger(std::span<const typename Point::Affine> bases, const std::vector<int32_t>& digits, int c,
                int windows) {
  const size_t n = bases.size();
  std::vector<Point> window_sums(windows);
  parallel_for(static_cast<size_t>(windows), [&](size_t wb, size_t we) {
    BucketSet<Point> buckets(size_t{1} << (c - 1));
    for (size_t w = wb; w < we; ++w) {
      buckets.reset();
      for (size_t i = 0; i < n; ++i) {
        int32_t d = digits[i * windows + w];
        if (d > 0) {
          buckets.add(static_cast<uint32_t>(d - 1), bases[i]);
        } else if (d < 0) {
          buckets.add(static_cast<uint32_t>(-d - 1), -bases[i]);
        }
      }
      window_sums[w] = buckets.finish();
    }
  });
  Point acc;
  for (int w = windows - 1; w >= 0; --w) {
    for (int i = 0; i < c; ++i) acc = acc.dbl();
    acc += window_sums[w];
  }
  return acc;
}

template <class Point>
Point naive(std::span<const typename Point::Affine> bases, std::span<const Fr> scalars) {
  Point acc;
  for (size_t i = 0; i < bases.size(); ++i) acc += Point(bases[i]).mul(scalars[i]);
  return acc;
}

template <class Point>
Point dispatch(std::span<const typename Point::Affine> bases, std::span<const Fr> scalars) {
  if (bases.size() != scalars.size()) throw std::invalid_argument("msm: size mismatch");
  const size_t n = bases.size();
  if (n < 8) return naive<Point>(bases, scalars);
  const int c = choose_window(n, kScalarBits);
  const int windows = windows_for(kScalarBits, c);
  std::vector<int32_t> digits(n * windows);
  parallel_for(n, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) signed_digits(scalars[i].to_canonical(), c, windows, &digits[i * windows]);
  }, 4096);
  return pippenger<Point>(bases, digits, c, windows);
}

}  // namespace

G1 msm(std::span<const G1Affine> bases, std::span<const Fr> scalars) { return dispatch<G1>(bases, scalars); }
G2 msm(std::span<const G2Affine> bases, std::span<const Fr> scalars) { return dispatch<G2>(bases, scalars); }

G1 msm_small(std::span<const G1Affine> bases, std::span<const int64_t> scalars) {
  if (bases.size() != scalars.size()) throw std::invalid_argument("msm: size mismatch");
  const size_t n = bases.size();
  int bits = 1;
  for (int64_t s : scalars) {
    if (s == INT64_MIN) throw std::invalid_argument("msm_small: scalar out of range");
    uint64_t mag = static_cast<uint64_t>(std::llabs(s));
    while (bits < 63 && (mag >> bits) != 0) ++bits;
  }
  const int c = choose_window(n, bits);
  const int windows = windows_for(bits, c);
  std::vector<int32_t> digits(n * windows);
  for (size_t i = 0; i < n; ++i) {
    uint64_t mag = static_cast<uint64_t>(std::llabs(scalars[i]));
    signed_digits(Limbs{mag, 0, 0, 0}, c, windows, &digits[i * windows]);
    if (scalars[i] < 0) {
      for (int w = 0; w < windows; ++w) digits[i * windows + w] = -digits[i * windows + w];
    }
  }
  return pippenger<G1>(bases, digits, c, windows);
}

FixedBaseTable::FixedBaseTable(std::span<const G1Affine> bases, int window_bits) : n_(bases.size()) {
  constexpr size_t kMaxTableBytes = size_t{1} << 30;
  c_ = 4;
  double best = 1e300;
  for (int c = 4; c <= 20; ++c) {
    int w = windows_for(kScalarBits, c);
    if (c > 4 && static_cast<size_t>(w) * n_ * sizeof(G1Affine) > kMaxTableBytes && n_ > 0) continue;
    double cost = static_cast<double>(w) * static_cast<double>(n_) + 4.0 * static_cast<double>(1ULL << (c - 1));
    if (cost < best) {
      best = cost;
      c_ = c;
    }
  }
  if (window_bits != 0) {
    if (window_bits < 2 || window_bits > 24) throw std::invalid_argument("fixed-base msm: window out of range");
    c_ = window_bits;
  }
  windows_ = windows_for(kScalarBits, c_);
  rows_.resize(static_cast<size_t>(windows_) * n_);
  std::copy(bases.begin(), bases.end(), rows_.begin());
  std::vector<G1> next(n_);
  for (int w = 1; w < windows_; ++w) {
    const G1Affine* prev = &rows_[(w - 1) * n_];
    parallel_for(n_, [&](size_t b, size_t e) {
      for (size_t i = b; i < e; ++i) {
        G1 p(prev[i]);
        for (int k = 0; k < c_; ++k) p = p.dbl();
        next[i] = p;
      }
    }, 1024);
    auto row = G1::batch_to_affine(next);
    std::copy(row.begin(), row.end(), rows_.begin() + w * n_);
  }
}

G1 FixedBaseTable::msm(std::span<const Fr> scalars) const {
  const size_t n = scalars.size();
  if (n > n_) throw std::invalid_argument("fixed-base msm: more scalars than bases");
  std::vector<int32_t> digits(n * windows_);
  parallel_for(n, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) signed_digits(scalars[i].to_canonical(), c_, windows_, &digits[i * windows_]);
  }, 4096);
  const size_t threads = std::max<size_t>(1, std::min<size_t>(worker_count(), static_cast<size_t>(windows_)));
  std::vector<G1> partial(threads);
  parallel_for(threads, [&](size_t tb, size_t te) {
    for (size_t t = tb; t < te; ++t) {
      BucketSet<G1> buckets(size_t{1} << (c_ - 1));
      buckets.reset();
      for (int w = static_cast<int>(t); w < windows_; w += static_cast<int>(threads)) {
        const G1Affine* row = &rows_[w * n_];
        for (size_t i = 0; i < n; ++i) {
          int32_t d = digits[i * windows_ + w];
          if (d > 0) {
            buckets.add(static_cast<uint32_t>(d - 1), row[i]);
          } else if (d < 0) {
            buckets.add(static_cast<uint32_t>(-d - 1), -row[i]);
          }
        }
      }
      partial[t] = buckets.finish();
    }
  }, 1);
  G1 acc;
  for (const auto& p : partial) acc += p;
  return acc;
}

G1 msm_naive(std::span<const G1Affine> bases, std::span<const Fr> scalars) {
  if (bases.size() != scalars.size()) throw std::invalid_argument("msm: size mismatch");
  return naive<G1>(bases, scalars);
}

}  // namespace zkprov::algebra
