#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubeshape {

// Exact rational on int64 numerator/denominator.
// Invariants: den > 0 and gcd(|num|, den) = 1. All intermediate products run
// in __int128; a reduced result that does not fit back into int64 throws
// std::overflow_error rather than wrapping.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d) { *this = reduce(n, d); }

  // Exact dyadic decomposition of a finite double: x = m * 2^e with
  // 53-bit m. No rounding is introduced.
  static Rational from_double(double x);

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_integer() const { return den_ == 1; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
  using i128 = __int128;

  static Rational reduce(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 a = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    unsigned __int128 b = static_cast<unsigned __int128>(d);
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a != 0) {
      n /= static_cast<i128>(a);
      d /= static_cast<i128>(a);
    }
    constexpr i128 lo = -i128(0x7fffffffffffffffLL) - 1;
    constexpr i128 hi = i128(0x7fffffffffffffffLL);
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflows int64");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  double f = std::frexp(x, &e);  // x = f * 2^e, |f| in [1/2, 1)
  auto m = static_cast<std::int64_t>(std::ldexp(f, 53));
  e -= 53;
  while (m != 0 && (m & 1) == 0) {
    m >>= 1;
    ++e;
  }
  if (e >= 0) {
    if (e > 62) throw std::overflow_error("from_double: magnitude exceeds int64");
    i128 n = i128(m) << e;
    return reduce(n, 1);
  }
  if (e < -62) throw std::overflow_error("from_double: denominator exceeds int64");
  return reduce(m, i128(1) << -e);
}

}  // namespace cubeshape
