#include "cubeshape/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace cubeshape::arith {

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  if (limit > 0xffffffffULL) throw std::invalid_argument("primes_up_to: limit too large");
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

SquarefreeSieve build_squarefree_sieve(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("squarefree sieve: limit must be >= 1");
  SquarefreeSieve sf;
  sf.limit = limit;
  sf.flags.assign(limit / 64 + 1, ~0ULL);
  sf.flags[0] &= ~1ULL;  // 0 is not counted
  // mask out bits past limit
  std::uint64_t top = limit & 63;
  if (top != 63) sf.flags.back() &= (top == 63 ? ~0ULL : ((1ULL << (top + 1)) - 1));
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  for (std::uint32_t p : primes_up_to(root)) {
    std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
    for (std::uint64_t q = p2; q <= limit; q += p2) sf.flags[q >> 6] &= ~(1ULL << (q & 63));
  }
  return sf;
}

MobiusSieve build_mobius_sieve(std::uint32_t limit) {
  if (limit < 1) throw std::invalid_argument("mobius sieve: limit must be >= 1");
  MobiusSieve mo;
  mo.limit = limit;
  mo.values.assign(static_cast<std::size_t>(limit) + 1, 0);
  mo.values[1] = 1;
  std::vector<std::uint32_t> lp(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (lp[i] == 0) {
      lp[i] = i;
      primes.push_back(i);
      mo.values[i] = -1;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
      if (p > lp[i] || ip > limit) break;
      lp[ip] = p;
      mo.values[ip] = (p == lp[i]) ? std::int8_t{0} : static_cast<std::int8_t>(-mo.values[i]);
    }
  }
  return mo;
}

bool is_squarefree_slow(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
    while (n % d == 0) n /= d;
  }
  return true;
}

bool is_strongly_carefree(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return false;
  return std::gcd(a, b) == 1 && is_squarefree_slow(a) && is_squarefree_slow(b);
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi -= phi / p;
  return phi;
}

int omega(std::uint64_t n) { return static_cast<int>(factorize(n).size()); }

ConstantEstimate euler_product_C(std::uint64_t prime_bound) {
  if (prime_bound < 2) throw std::invalid_argument("euler_product_C: bound must be >= 2");
  auto primes = primes_up_to(prime_bound);
  std::vector<double> pd(primes.begin(), primes.end());
  double value = kernels::carefree_product(pd.data(), pd.size());
  double tail = value * 4.0 / static_cast<double>(prime_bound - 1);
  return {value, prime_bound, tail};
}

ConstantEstimate kappa(std::uint64_t prime_bound) {
  if (prime_bound < 2) throw std::invalid_argument("kappa: bound must be >= 2");
  long double acc = 0.0L;
  for (std::uint32_t p : primes_up_to(prime_bound)) {
    long double pl = p;
    acc += std::log(pl) / (pl * pl + pl - 2.0L);
  }
  double lp = std::log(static_cast<double>(prime_bound));
  return {static_cast<double>(acc), prime_bound, (lp + 1.0) / static_cast<double>(prime_bound)};
}

ConstantEstimate euler_gamma() {
  // H_N - ln N - 1/(2N) + 1/(12 N^2) - 1/(120 N^4); the next correction is
  // ~1/(252 N^6), far below the reported bound at N = 10^4.
  constexpr std::uint64_t N = 10000;
  long double h = 0.0L;
  for (std::uint64_t k = N; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  long double n = static_cast<long double>(N);
  long double g = h - std::log(n) - 1.0L / (2.0L * n) + 1.0L / (12.0L * n * n) -
                  1.0L / (120.0L * n * n * n * n);
  return {static_cast<double>(g), N, 1e-12};
}

namespace {

void check_progression(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n) {
  if (a == 0 || n == 0) throw std::invalid_argument("count: a and n must be >= 1");
  if (std::gcd(a, n) != 1) throw std::invalid_argument("count: gcd(a, n) must be 1");
  if (std::gcd(a_prime % n == 0 ? n : a_prime % n, n) != 1 && n > 1)
    throw std::invalid_argument("count: residue must be invertible mod n");
}

std::uint64_t first_term(std::uint64_t a_prime, std::uint64_t n) {
  std::uint64_t r = a_prime % n;
  return r == 0 ? n : r;
}

}  // namespace

std::int64_t count_T(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n, double x) {
  check_progression(a, a_prime, n);
  if (x < 1.0) return 0;
  auto xi = static_cast<std::uint64_t>(x);
  std::int64_t cnt = 0;
  for (std::uint64_t b = first_term(a_prime, n); b <= xi; b += n)
    if (std::gcd(a, b) == 1) ++cnt;
  return cnt;
}

double formula_T(std::uint64_t a, std::uint64_t n, double x) {
  if (a == 0 || n == 0) throw std::invalid_argument("formula_T: a and n must be >= 1");
  return static_cast<double>(euler_phi(a)) * x / (static_cast<double>(a) * static_cast<double>(n));
}

std::int64_t count_S(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n, double x,
                     const SquarefreeSieve& sf) {
  check_progression(a, a_prime, n);
  if (x < 1.0) return 0;
  auto xi = static_cast<std::uint64_t>(x);
  if (xi > sf.limit) throw std::invalid_argument("count_S: sieve does not cover x");
  std::int64_t cnt = 0;
  for (std::uint64_t b = first_term(a_prime, n); b <= xi; b += n)
    if (sf.is_squarefree(b) && std::gcd(a, b) == 1) ++cnt;
  return cnt;
}

std::int64_t count_S(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n, double x) {
  auto sf = build_squarefree_sieve(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(x)));
  return count_S(a, a_prime, n, x, sf);
}

double formula_S(std::uint64_t a, std::uint64_t n, double x) {
  if (std::gcd(a, n) != 1) throw std::invalid_argument("formula_S: gcd(a, n) must be 1");
  double main = formula_T(a, n, x) * 6.0 / (std::numbers::pi * std::numbers::pi);
  for (const auto& [p, e] : factorize(a)) {
    double pd = static_cast<double>(p);
    main *= pd * pd / (pd * pd - 1.0);
  }
  for (const auto& [p, e] : factorize(n)) {
    double pd = static_cast<double>(p);
    main *= pd * pd / (pd * pd - 1.0);
  }
  return main;
}

AnalyticConstants AnalyticConstants::compute(std::uint64_t prime_bound) {
  return {euler_product_C(prime_bound), cubeshape::arith::kappa(prime_bound), euler_gamma()};
}

PerronSum perron_sum(unsigned k, std::uint64_t n, double x, const AnalyticConstants& constants) {
  if (n == 0) throw std::invalid_argument("perron_sum: n must be >= 1");
  if (x < 1.0) throw std::invalid_argument("perron_sum: x must be >= 1");
  auto xi = static_cast<std::uint64_t>(x);
  auto primes = primes_up_to(xi);

  // Depth-first walk over squarefree a <= x coprime to n; the weight of a is
  // a^k prod_{p|a} 1/(p+1).
  long double total = 0.0L;
  struct Frame {
    std::size_t idx;
    std::uint64_t a;
    long double w;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 1, 1.0L});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    total += f.w * (k == 0 ? 1.0L : std::pow(static_cast<long double>(f.a), static_cast<long double>(k)));
    for (std::size_t j = f.idx; j < primes.size(); ++j) {
      std::uint64_t p = primes[j];
      if (p > xi / f.a) break;
      if (n % p == 0) continue;
      stack.push_back({j + 1, f.a * p, f.w / static_cast<long double>(p + 1)});
    }
  }

  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  double h0 = zeta2 * constants.C.value;
  double log_correction = 0.0;
  for (const auto& [p, e] : factorize(n)) {
    double pd = static_cast<double>(p);
    h0 /= 1.0 + 1.0 / (pd + 1.0);
    log_correction += std::log(pd) / (pd + 2.0);
  }
  double main = (k == 0)
                    ? h0 * (std::log(x) + constants.gamma.value + 3.0 * constants.kappa.value +
                            log_correction)
                    : h0 * std::pow(x, static_cast<double>(k)) / static_cast<double>(k);
  return {static_cast<double>(total), main};
}

PerronSum perron_sum(unsigned k, std::uint64_t n, double x) {
  static const AnalyticConstants defaults = AnalyticConstants::compute(1000000);
  return perron_sum(k, n, x, defaults);
}

}  // namespace cubeshape::arith
