#pragma once

#include <cstddef>
#include <cstdint>

namespace cubeshape::kernels {

// Data-parallel inner-loop primitives behind the counting and constant
// machinery. Each primitive has a scalar reference implementation and an
// AVX2 variant; one of them is selected once at startup. The two variants
// are bit-identical by contract:
//
//   popcount, popcount_and  - integer results, any association order.
//   carefree_product        - product over the given primes p of
//                             (1 - 3/p^2 + 2/p^3). Both implementations
//                             keep four interleaved partial products
//                             (lane j holds indices j mod 4 of the quad
//                             prefix), combine them as (p0*p1)*(p2*p3),
//                             then fold the remaining <4 elements in
//                             sequentially. Every lane operation is a
//                             correctly-rounded IEEE mul/sub/add/div, so
//                             the rounding sequence is identical.
//
// Both files are compiled with contraction disabled; see the top-level
// build flags.

struct Impl {
  std::uint64_t (*popcount)(const std::uint64_t*, std::size_t);
  std::uint64_t (*popcount_and)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  double (*carefree_product)(const double*, std::size_t);
  const char* name;
};

const Impl& scalar_impl();
// nullptr when AVX2 was not compiled in or the CPU lacks it.
const Impl* avx2_impl();
// AVX2 when available, unless CUBESHAPE_FORCE_SCALAR is set in the
// environment. Decided once, on first use.
const Impl& active_impl();

inline std::uint64_t popcount(const std::uint64_t* words, std::size_t n) {
  return active_impl().popcount(words, n);
}
inline std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  return active_impl().popcount_and(a, b, n);
}
inline double carefree_product(const double* primes, std::size_t n) {
  return active_impl().carefree_product(primes, n);
}

}  // namespace cubeshape::kernels
