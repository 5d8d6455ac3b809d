#include "cubeshape/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include "cubeshape/kernels.hpp"

namespace cubeshape::census {

namespace {

using fields::FieldType;
using i128 = __int128;

constexpr std::int64_t kMaxGrid = 200'000'000;  // practical sieve envelope

std::int64_t floor_div(i128 n, i128 d) { return static_cast<std::int64_t>(n / d); }
std::int64_t ceil_div(i128 n, i128 d) { return static_cast<std::int64_t>((n + d - 1) / d); }

// Largest v >= 0 with v^2 * den <= num (num, den > 0).
std::int64_t isqrt_bound(i128 num, i128 den) {
  auto v = static_cast<std::int64_t>(
      std::sqrt(static_cast<double>(num) / static_cast<double>(den)));
  v = std::max<std::int64_t>(v, 0);
  while (i128(v + 1) * (v + 1) * den <= num) ++v;
  while (v > 0 && i128(v) * v * den > num) --v;
  return v;
}

// Shared read-only tables for masked popcount counting over b.
struct Grid {
  std::int64_t limit;
  arith::SquarefreeSieve sf;
  // masks[i] has bit b set iff b mod 9 lies in {c, 9 - c}, c = 1, 2, 4.
  std::array<std::vector<std::uint64_t>, 3> masks;
  std::vector<std::uint32_t> trial_primes;

  explicit Grid(std::int64_t lim)
      : limit(std::max<std::int64_t>(lim, 1)),
        sf(arith::build_squarefree_sieve(static_cast<std::uint64_t>(limit))) {
    if (lim > kMaxGrid) throw std::invalid_argument("census: bound too large for the sieve");
    const std::size_t words = sf.flags.size();
    constexpr int reps[3] = {1, 2, 4};
    for (int i = 0; i < 3; ++i) {
      masks[i].assign(words, 0);
      for (std::int64_t c : {reps[i], 9 - reps[i]})
        for (std::int64_t b = c; b <= limit; b += 9) masks[i][b >> 6] |= 1ULL << (b & 63);
    }
    trial_primes = arith::primes_up_to(65536);
  }

  // Index of the residue-class mask for a (requires a % 3 != 0): Type II
  // pairs have b = +-a (mod 9).
  int mask_index(std::int64_t a) const {
    int c = static_cast<int>(a % 9);
    int cc = std::min(c, 9 - c);
    return cc == 1 ? 0 : (cc == 2 ? 1 : 2);
  }
};

void distinct_primes(std::int64_t a, const std::vector<std::uint32_t>& tp,
                     std::vector<std::int64_t>& out) {
  out.clear();
  std::int64_t rest = a;
  for (std::uint32_t p : tp) {
    auto pl = static_cast<std::int64_t>(p);
    if (pl * pl > rest) break;
    if (rest % pl == 0) {
      out.push_back(pl);
      do rest /= pl;
      while (rest % pl == 0);
    }
  }
  if (rest > 1) out.push_back(rest);
}

struct WindowCounts {
  std::int64_t total = 0;
  std::int64_t type_ii = 0;
  WindowCounts& operator+=(const WindowCounts& o) {
    total += o.total;
    type_ii += o.type_ii;
    return *this;
  }
};

struct Scratch {
  std::vector<std::uint64_t> words;
  std::vector<std::int64_t> primes;
};

// Count squarefree b in [lo, hi] coprime to squarefree a; when asked, also
// the sub-count with b = +-a (mod 9) (the Type II residue condition).
WindowCounts count_b_window(const Grid& g, std::int64_t a, std::int64_t lo, std::int64_t hi,
                            bool want_ii, Scratch& s) {
  lo = std::max<std::int64_t>(lo, 1);
  hi = std::min(hi, g.limit);
  if (lo > hi) return {};
  const std::size_t w0 = static_cast<std::size_t>(lo >> 6);
  const std::size_t nw = static_cast<std::size_t>(hi >> 6) - w0 + 1;
  if (s.words.size() < nw) s.words.resize(nw);
  std::memcpy(s.words.data(), g.sf.flags.data() + w0, nw * sizeof(std::uint64_t));
  s.words[0] &= ~0ULL << (lo & 63);
  const std::uint64_t top = hi & 63;
  if (top != 63) s.words[nw - 1] &= (1ULL << (top + 1)) - 1;

  distinct_primes(a, g.trial_primes, s.primes);
  const std::int64_t base = static_cast<std::int64_t>(w0) << 6;
  for (std::int64_t p : s.primes)
    for (std::int64_t q = ((lo + p - 1) / p) * p; q <= hi; q += p) {
      const std::int64_t off = q - base;
      s.words[off >> 6] &= ~(1ULL << (off & 63));
    }

  WindowCounts wc;
  wc.total = static_cast<std::int64_t>(kernels::popcount(s.words.data(), nw));
  if (want_ii && a % 3 != 0)
    wc.type_ii = static_cast<std::int64_t>(
        kernels::popcount_and(s.words.data(), g.masks[g.mask_index(a)].data() + w0, nw));
  return wc;
}

// Accumulate count_b_window over squarefree a in [1, a_max]; window(a)
// yields the inclusive b-range. Work is dealt in fixed blocks; the merge is
// an integer sum, so the result is independent of the thread count.
template <typename WindowFn>
WindowCounts sum_over_a(const Grid& g, std::int64_t a_max, bool want_ii, unsigned threads,
                        WindowFn window) {
  threads = std::max(1u, threads);
  WindowCounts totals;
  if (a_max < 1) return totals;
  std::atomic<std::int64_t> next{1};
  constexpr std::int64_t kBlock = 512;
  std::mutex merge_mu;
  auto worker = [&] {
    Scratch s;
    WindowCounts local;
    for (;;) {
      const std::int64_t a0 = next.fetch_add(kBlock);
      if (a0 > a_max) break;
      const std::int64_t a1 = std::min(a_max, a0 + kBlock - 1);
      for (std::int64_t a = a0; a <= a1; ++a) {
        if (!g.sf.is_squarefree(static_cast<std::uint64_t>(a))) continue;
        auto [lo, hi] = window(a);
        if (lo > hi) continue;
        local += count_b_window(g, a, lo, hi, want_ii, s);
      }
    }
    std::scoped_lock lk(merge_mu);
    totals += local;
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return totals;
}

struct Range {
  std::int64_t lo, hi;
};

void check_cone_args(std::int64_t N, const Rational& R) {
  if (N < 0) throw std::invalid_argument("census: N must be >= 0");
  if (!(R >= Rational(1))) throw std::invalid_argument("census: R must be >= 1");
}

WindowCounts cone_counts(std::int64_t N, const Rational& R, Edge edge, unsigned threads) {
  check_cone_args(N, R);
  if (N < 1) return {};
  // ab <= N and b <= Ra force a, b <= sqrt(NR); a, b <= N regardless.
  const std::int64_t amax =
      std::min<std::int64_t>(N, isqrt_bound(i128(N) * R.num(), R.den()));
  Grid g(amax);
  const i128 rn = R.num(), rd = R.den();
  return sum_over_a(g, amax, true, threads, [&](std::int64_t a) -> Range {
    i128 an = i128(a) * rn, ad = i128(a) * rd;
    std::int64_t hi, lo;
    if (edge == Edge::closed) {
      hi = std::min(N / a, floor_div(an, rd));  // b <= Ra
      lo = std::max<std::int64_t>(1, ceil_div(ad, rn));  // b >= a/R
    } else {
      hi = std::min(N / a, ceil_div(an, rd) - 1);  // b < Ra
      lo = std::max<std::int64_t>(1, floor_div(ad, rn) + 1);  // b > a/R
    }
    return {lo, hi};
  });
}

}  // namespace

ConeCount count_cone(std::int64_t N, const Rational& R, Edge edge, unsigned threads) {
  WindowCounts wc = cone_counts(N, R, edge, threads);
  return {wc.total, wc.type_ii};
}

CoupleCount count_couples(std::int64_t N, const Rational& R, unsigned threads) {
  if (N < 1) throw std::invalid_argument("count_couples: N must be >= 1");
  WindowCounts wc = cone_counts(N, R, Edge::closed, threads);
  return {N, R, wc.total, wc.total - wc.type_ii, wc.type_ii};
}

RegionCounts count_couples_by_regions(std::int64_t N, const Rational& R, unsigned threads) {
  if (N < 1) throw std::invalid_argument("count_couples_by_regions: N must be >= 1");
  check_cone_args(N, R);
  const i128 rn = R.num(), rd = R.den();
  const std::int64_t A1 = isqrt_bound(i128(N) * rn, rd);  // a <= sqrt(NR)
  const std::int64_t A2 = isqrt_bound(i128(N) * rd, rn);  // a <= sqrt(N/R)
  Grid g(std::max(N, A1));

  RegionCounts rc;
  rc.r1 = sum_over_a(g, A1, false, threads, [&](std::int64_t a) -> Range {
            return {1, N / a};
          }).total;
  rc.r2 = sum_over_a(g, A2, false, threads, [&](std::int64_t a) -> Range {
            return {1, N / a};
          }).total;
  rc.r3 = sum_over_a(g, A2, false, threads, [&](std::int64_t a) -> Range {
            return {1, floor_div(i128(a) * rn, rd)};
          }).total;
  rc.r4 = sum_over_a(g, A1, false, threads, [&](std::int64_t a) -> Range {
            return {1, ceil_div(i128(a) * rd, rn) - 1};  // b < a/R, strict
          }).total;
  return rc;
}

std::int64_t hyperbola_bound(std::int64_t X, std::int64_t mult) {
  if (X < 0 || mult < 1) throw std::invalid_argument("hyperbola_bound: bad arguments");
  return isqrt_bound(X, mult);
}

FieldCount count_fields(std::int64_t X, const Rational& R1, const Rational& R2,
                        unsigned threads) {
  if (X < 1) throw std::invalid_argument("count_fields: X must be >= 1");
  if (!(Rational(1) <= R1 && R1 < R2))
    throw std::invalid_argument("count_fields: need 1 <= R1 < R2");

  FieldCount fc;
  fc.X = X;
  fc.R1 = R1;
  fc.R2 = R2;
  fields::enumerate_fields(X, fields::RatioWindow{R1, R2},
                           [&](const fields::PureCubicField& K) {
                             if (K.type == FieldType::I)
                               ++fc.n_i;
                             else
                               ++fc.n_ii;
                           });

  // Exact cone identity: every field of ratio r in (R1, R2) appears twice in
  // S^open(P, R2) - S^closed(P, R1), once per orientation, and nothing else
  // survives the difference.
  const std::int64_t p_i = hyperbola_bound(X, 27);
  const std::int64_t p_ii = hyperbola_bound(X, 3);
  const std::int64_t two_ni = count_cone(p_i, R2, Edge::open, threads).type_i() -
                              count_cone(p_i, R1, Edge::closed, threads).type_i();
  const std::int64_t two_nii = count_cone(p_ii, R2, Edge::open, threads).type_ii -
                               count_cone(p_ii, R1, Edge::closed, threads).type_ii;
  if (two_ni % 2 != 0 || two_nii % 2 != 0)
    throw consistency_error("count_fields: cone identity produced an odd pair count");
  if (two_ni / 2 != fc.n_i || two_nii / 2 != fc.n_ii)
    throw consistency_error("count_fields: enumeration and cone identity disagree");
  return fc;
}

Rational normalizer_multiplier(fields::FieldType type) {
  return type == FieldType::I ? Rational(2, 15) : Rational(1, 10);
}

double normalizer(fields::FieldType type, double C_value) {
  return normalizer_multiplier(type).to_double() * std::numbers::sqrt3 * C_value;
}

namespace {

// Sign of ratio - edge^3, the edge taken as the exact dyadic rational of
// its double. Integer path whenever the cube fits; long-double cbrt with
// ~1e-18 relative error otherwise (such edges are irrational targets that
// no field ratio can hit).
int cmp_ratio_edge_cubed(const Rational& r, double edge) {
  Rational q = Rational::from_double(edge);
  constexpr std::int64_t kCubeFits = 1 << 21;
  if (q.num() >= 0 && q.num() <= kCubeFits && q.den() <= kCubeFits) {
    const i128 u = q.num(), v = q.den();
    const i128 lhs = i128(r.num()) * (v * v * v);
    const i128 rhs = i128(r.den()) * (u * u * u);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  const long double y = cbrtl(static_cast<long double>(r.num()) / static_cast<long double>(r.den()));
  const long double d = y - static_cast<long double>(edge);
  return d < 0 ? -1 : (d > 0 ? 1 : 0);
}

}  // namespace

int y_bin_index(const Rational& ratio, const std::vector<double>& edges) {
  if (edges.size() < 2) throw std::invalid_argument("y_bin_index: need at least two edges");
  if (cmp_ratio_edge_cubed(ratio, edges.front()) < 0) return -1;
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (cmp_ratio_edge_cubed(ratio, edges[i]) < 0) return static_cast<int>(i) - 1;
  return -1;
}

EmpiricalMeasure empirical_measure(fields::FieldType type, std::int64_t X,
                                   const std::vector<double>& edges,
                                   const arith::ConstantEstimate& C, unsigned threads) {
  if (X < 1) throw std::invalid_argument("empirical_measure: X must be >= 1");
  if (edges.size() < 2) throw std::invalid_argument("empirical_measure: need >= 2 edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] >= 1.0)) throw std::invalid_argument("empirical_measure: edges must be >= 1");
    if (i > 0 && !(edges[i] > edges[i - 1]))
      throw std::invalid_argument("empirical_measure: edges must be strictly increasing");
  }

  EmpiricalMeasure em;
  em.type = type;
  em.X = X;
  em.edges = edges;
  em.counts.assign(edges.size() - 1, 0);

  const std::int64_t P = hyperbola_bound(X, type == FieldType::I ? 27 : 3);
  // Couples with ratio beyond the last edge cannot land in any bin.
  const double hcap_d = std::pow(edges.back(), 3.0) + 2.0;
  const auto hcap = static_cast<std::int64_t>(hcap_d);

  if (P >= 2) {
    const auto sf = arith::build_squarefree_sieve(static_cast<std::uint64_t>(P));
    threads = std::max(1u, threads);
    std::atomic<std::int64_t> next{1};
    std::mutex merge_mu;
    auto worker = [&] {
      std::vector<std::int64_t> local(em.counts.size(), 0);
      for (;;) {
        const std::int64_t b = next.fetch_add(1);
        if (b * (b + 1) > P) break;
        if (!sf.is_squarefree(static_cast<std::uint64_t>(b))) continue;
        std::int64_t atop = P / b;
        if (hcap > 0 && hcap < (std::int64_t{1} << 62) / std::max<std::int64_t>(b, 1))
          atop = std::min(atop, b * hcap);
        for (std::int64_t a = b + 1; a <= atop; ++a) {
          if (!sf.is_squarefree(static_cast<std::uint64_t>(a))) continue;
          if (std::gcd(a, b) != 1) continue;
          if (fields::classify(a, b) != type) continue;
          const int idx = y_bin_index(Rational(a, b), edges);
          if (idx >= 0) ++local[static_cast<std::size_t>(idx)];
        }
      }
      std::scoped_lock lk(merge_mu);
      for (std::size_t i = 0; i < local.size(); ++i) em.counts[i] += local[i];
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  }

  em.normalizer_value = normalizer(type, C.value);
  const double denom = em.normalizer_value * std::sqrt(static_cast<double>(X));
  em.masses.resize(em.counts.size());
  for (std::size_t i = 0; i < em.counts.size(); ++i)
    em.masses[i] = static_cast<double>(em.counts[i]) / denom;
  return em;
}

std::vector<ConvergenceRow> convergence_table(fields::FieldType type, double R1, double R2,
                                              const std::vector<std::int64_t>& X_list,
                                              const arith::ConstantEstimate& C,
                                              unsigned threads) {
  if (!(R1 >= 1.0) || !(R2 > R1))
    throw std::invalid_argument("convergence_table: need 1 <= R1 < R2");
  const double target = std::log(R2 / R1);
  std::vector<ConvergenceRow> rows;
  rows.reserve(X_list.size());
  for (std::int64_t X : X_list) {
    EmpiricalMeasure em = empirical_measure(type, X, {R1, R2}, C, threads);
    rows.push_back({X, em.masses[0], std::abs(em.masses[0] - target)});
  }
  return rows;
}

}  // namespace cubeshape::census
