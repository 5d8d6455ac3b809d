#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "cubeshape/arith.hpp"
#include "cubeshape/kernels.hpp"

namespace k = cubeshape::kernels;

namespace {

std::vector<std::uint64_t> random_words(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng{seed};
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) x = rng();
  return w;
}

}  // namespace

TEST_CASE("scalar popcount agrees with a direct bit loop") {
  auto w = random_words(129, 7);
  std::uint64_t expect = 0;
  for (auto x : w)
    for (int i = 0; i < 64; ++i) expect += (x >> i) & 1;
  CHECK(k::scalar_impl().popcount(w.data(), w.size()) == expect);
}

TEST_CASE("popcount_and equals popcount of the anded buffers") {
  auto a = random_words(200, 11);
  auto b = random_words(200, 13);
  std::vector<std::uint64_t> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] & b[i];
  const auto& impl = k::scalar_impl();
  CHECK(impl.popcount_and(a.data(), b.data(), a.size()) == impl.popcount(m.data(), m.size()));
}

TEST_CASE("avx2 variants are bit-identical to scalar") {
  const k::Impl* v = k::avx2_impl();
  if (v == nullptr) {
    MESSAGE("avx2 not available on this machine; dispatch falls back to scalar");
    CHECK(std::string(k::active_impl().name) == "scalar");
    return;
  }
  const auto& s = k::scalar_impl();
  // lengths straddle the 4-word/4-lane boundaries, including 0 and tails
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 63u, 64u, 65u, 1000u}) {
    auto a = random_words(n + 1, 1000 + n);
    auto b = random_words(n + 1, 2000 + n);
    CHECK(v->popcount(a.data(), n) == s.popcount(a.data(), n));
    CHECK(v->popcount_and(a.data(), b.data(), n) == s.popcount_and(a.data(), b.data(), n));
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 101u, 1024u, 9999u}) {
    auto primes = cubeshape::arith::primes_up_to(200000);
    std::vector<double> pd(primes.begin(), primes.begin() + std::min(n, primes.size()));
    double sv = s.carefree_product(pd.data(), pd.size());
    double vv = v->carefree_product(pd.data(), pd.size());
    CHECK(sv == vv);  // exact: identical rounding sequences by contract
  }
}

TEST_CASE("carefree_product over the first primes matches slow long-double product") {
  std::vector<double> pd{2, 3, 5, 7, 11};
  long double slow = 1.0L;
  for (double p : pd) slow *= (1.0L - 3.0L / (p * p) + 2.0L / (p * p * p));
  double got = k::carefree_product(pd.data(), pd.size());
  CHECK(got == doctest::Approx(static_cast<double>(slow)).epsilon(1e-14));
}

TEST_CASE("active implementation is one of the published ones") {
  std::string name = k::active_impl().name;
  CHECK((name == "scalar" || name == "avx2"));
}
