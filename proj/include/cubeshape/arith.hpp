#pragma once

#include <cstdint>
#include <vector>

#include "cubeshape/kernels.hpp"

namespace cubeshape::arith {

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// Bit-indexed squarefree table: bit n is set iff n is squarefree, 1 <= n <= limit.
struct SquarefreeSieve {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> flags;

  bool is_squarefree(std::uint64_t n) const {
    return n >= 1 && n <= limit && ((flags[n >> 6] >> (n & 63)) & 1u) != 0;
  }
  std::uint64_t count() const { return kernels::popcount(flags.data(), flags.size()); }
};
SquarefreeSieve build_squarefree_sieve(std::uint64_t limit);

// values[n] = mu(n) for 0 <= n <= limit (values[0] = 0), by linear sieve.
struct MobiusSieve {
  std::uint32_t limit = 0;
  std::vector<std::int8_t> values;

  int mu(std::uint32_t n) const { return values[n]; }
};
MobiusSieve build_mobius_sieve(std::uint32_t limit);

// Trial-division spot checks, independent of the sieves.
bool is_squarefree_slow(std::uint64_t n);
// gcd(a,b) = 1 and both squarefree.
bool is_strongly_carefree(std::uint64_t a, std::uint64_t b);

struct PrimePower {
  std::uint64_t p;
  int e;
};
std::vector<PrimePower> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int omega(std::uint64_t n);

// A partial-sum/partial-product approximation to a limit constant, with a
// rigorous bound on the truncation error.
struct ConstantEstimate {
  double value = 0;
  std::uint64_t prime_bound = 0;  // cutoff used (series length for euler_gamma)
  double tail_bound = 0;
};

// prod_{p <= P} (1 - 3/p^2 + 2/p^3), the strongly-carefree density constant.
// Tail: 0 <= value - limit <= value * 4/(P-1) since -log(factor) <= 4/p^2 and
// sum_{p > P} 1/p^2 <= 1/(P-1).
ConstantEstimate euler_product_C(std::uint64_t prime_bound);

// sum_{p <= P} log p / (p^2 + p - 2). Tail <= (log P + 1)/P.
ConstantEstimate kappa(std::uint64_t prime_bound);

// Euler-Mascheroni constant by Euler-Maclaurin on the harmonic sum,
// correct to well past 12 digits. prime_bound holds the series cutoff.
ConstantEstimate euler_gamma();

// Counting functions for b <= x, b = a_prime (mod n), gcd(a, b) = 1,
// with b additionally squarefree for the S variant. Both require
// gcd(a, n) = 1 and gcd(a_prime, n) = 1.
std::int64_t count_T(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n, double x);
// Main term phi(a) x / (a n).
double formula_T(std::uint64_t a, std::uint64_t n, double x);
std::int64_t count_S(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n, double x,
                     const SquarefreeSieve& sf);
std::int64_t count_S(std::uint64_t a, std::uint64_t a_prime, std::uint64_t n, double x);
// Main term phi(a) x / (a n) * (6/pi^2) * prod_{p | a n} p^2/(p^2 - 1).
double formula_S(std::uint64_t a, std::uint64_t n, double x);

struct AnalyticConstants {
  ConstantEstimate C;
  ConstantEstimate kappa;
  ConstantEstimate gamma;
  static AnalyticConstants compute(std::uint64_t prime_bound);
};

// sum over squarefree a <= x, gcd(a, n) = 1, of a^k prod_{p|a} 1/(p + 1),
// against its residue main term:
//   k = 0:  zeta(2) C prod_{p|n}(1 + 1/(p+1))^{-1}
//             * (log x + gamma + 3 kappa + sum_{p|n} log p/(p + 2))
//   k > 0:  zeta(2) C prod_{p|n}(1 + 1/(p+1))^{-1} * x^k / k
struct PerronSum {
  double exact_sum = 0;
  double main_term = 0;
};
PerronSum perron_sum(unsigned k, std::uint64_t n, double x, const AnalyticConstants& constants);
PerronSum perron_sum(unsigned k, std::uint64_t n, double x);

}  // namespace cubeshape::arith
