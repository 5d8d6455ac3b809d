#include "cubeshape/kernels.hpp"

#if defined(CUBESHAPE_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace cubeshape::kernels::detail_avx2 {

namespace {

// Per-byte popcount via nibble lookup, reduced to four u64 lanes with SAD.
inline __m256i popcnt_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

std::uint64_t popcount_avx2(const std::uint64_t* words, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    acc = _mm256_add_epi64(acc, popcnt_bytes(v));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
  return total;
}

std::uint64_t popcount_and_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcnt_bytes(_mm256_and_si256(va, vb)));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

inline double carefree_term(double p) {
  double u = 1.0 / p;
  double u2 = u * u;
  double u3 = u2 * u;
  return (1.0 - 3.0 * u2) + 2.0 * u3;
}

double carefree_product_avx2(const double* primes, std::size_t n) {
  const __m256d ones = _mm256_set1_pd(1.0);
  const __m256d threes = _mm256_set1_pd(3.0);
  const __m256d twos = _mm256_set1_pd(2.0);
  __m256d acc = ones;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_loadu_pd(primes + i);
    __m256d u = _mm256_div_pd(ones, p);
    __m256d u2 = _mm256_mul_pd(u, u);
    __m256d u3 = _mm256_mul_pd(u2, u);
    __m256d t = _mm256_add_pd(_mm256_sub_pd(ones, _mm256_mul_pd(threes, u2)),
                              _mm256_mul_pd(twos, u3));
    acc = _mm256_mul_pd(acc, t);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double result = (lanes[0] * lanes[1]) * (lanes[2] * lanes[3]);
  for (; i < n; ++i) result *= carefree_term(primes[i]);
  return result;
}

constexpr Impl kAvx2{popcount_avx2, popcount_and_avx2, carefree_product_avx2, "avx2"};

}  // namespace

const Impl& impl() { return kAvx2; }

}  // namespace cubeshape::kernels::detail_avx2

#endif  // CUBESHAPE_HAVE_AVX2
