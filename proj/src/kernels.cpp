#include "cubeshape/kernels.hpp"

#include <bit>
#include <cstdlib>

namespace cubeshape::kernels {

namespace {

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<std::uint64_t>(std::popcount(words[i]));
  return acc;
}

std::uint64_t popcount_and_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return acc;
}

inline double carefree_term(double p) {
  double u = 1.0 / p;
  double u2 = u * u;
  double u3 = u2 * u;
  return (1.0 - 3.0 * u2) + 2.0 * u3;
}

double carefree_product_scalar(const double* primes, std::size_t n) {
  double acc0 = 1.0, acc1 = 1.0, acc2 = 1.0, acc3 = 1.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 *= carefree_term(primes[i]);
    acc1 *= carefree_term(primes[i + 1]);
    acc2 *= carefree_term(primes[i + 2]);
    acc3 *= carefree_term(primes[i + 3]);
  }
  double result = (acc0 * acc1) * (acc2 * acc3);
  for (; i < n; ++i) result *= carefree_term(primes[i]);
  return result;
}

constexpr Impl kScalar{popcount_scalar, popcount_and_scalar, carefree_product_scalar, "scalar"};

}  // namespace

const Impl& scalar_impl() { return kScalar; }

#if defined(CUBESHAPE_HAVE_AVX2)
namespace detail_avx2 {
const Impl& impl();  // defined in kernels_avx2.cpp
}

const Impl* avx2_impl() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt"))
    return &detail_avx2::impl();
#endif
  return nullptr;
}
#else
const Impl* avx2_impl() { return nullptr; }
#endif

const Impl& active_impl() {
  static const Impl& chosen = []() -> const Impl& {
    if (std::getenv("CUBESHAPE_FORCE_SCALAR") != nullptr) return kScalar;
    if (const Impl* v = avx2_impl()) return *v;
    return kScalar;
  }();
  return chosen;
}

}  // namespace cubeshape::kernels
