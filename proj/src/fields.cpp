#include "cubeshape/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cubeshape/arith.hpp"

namespace cubeshape::fields {

namespace {
using i128 = __int128;

std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && i128(r) * r > n) --r;
  while (i128(r + 1) * (r + 1) <= n) ++r;
  return r;
}
}  // namespace

const char* to_string(FieldType t) { return t == FieldType::I ? "I" : "II"; }

CarefreeCouple CarefreeCouple::make(std::int64_t a, std::int64_t b) {
  if (b < 1 || a <= b) throw std::invalid_argument("couple: need a > b >= 1");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("couple: a and b must be coprime");
  if (!arith::is_squarefree_slow(static_cast<std::uint64_t>(a)) ||
      !arith::is_squarefree_slow(static_cast<std::uint64_t>(b)))
    throw std::invalid_argument("couple: a and b must be squarefree");
  return CarefreeCouple{a, b};
}

FieldType classify(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1) throw std::invalid_argument("classify: a, b must be >= 1");
  if (a % 3 == 0 || b % 3 == 0) return FieldType::I;
  std::int64_t d = (a % 9) * (a % 9) - (b % 9) * (b % 9);
  return d % 9 == 0 ? FieldType::II : FieldType::I;
}

PureCubicField PureCubicField::from_couple(const CarefreeCouple& c) {
  PureCubicField K;
  K.couple = c;
  i128 m = i128(c.a) * c.b * c.b;
  i128 mp = i128(c.a) * c.a * c.b;
  K.type = classify(c.a, c.b);
  i128 ab = i128(c.a) * c.b;
  i128 disc = -(K.type == FieldType::I ? i128(27) : i128(3)) * ab * ab;
  constexpr i128 lo = -i128(0x7fffffffffffffffLL) - 1;
  constexpr i128 hi = i128(0x7fffffffffffffffLL);
  if (m > hi || mp > hi || disc < lo)
    throw std::overflow_error("field parameters exceed int64");
  K.m = static_cast<std::int64_t>(m);
  K.m_prime = static_cast<std::int64_t>(mp);
  K.discriminant = static_cast<std::int64_t>(disc);
  K.ratio = Rational(c.a, c.b);
  return K;
}

PureCubicField canonicalize(std::int64_t m_raw) {
  if (m_raw < 2) throw std::invalid_argument("canonicalize: m must be >= 2");
  std::int64_t rest = m_raw;
  std::int64_t a = 1, b = 1;
  for (std::int64_t d = 2; i128(d) * d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    switch (e % 3) {
      case 1: a *= d; break;
      case 2: b *= d; break;
      default: break;
    }
  }
  if (rest > 1) {
    // rest has no prime factor below its cube root: it is p, p^2, or p*q.
    std::int64_t s = isqrt64(rest);
    if (s * s == rest)
      b *= s;
    else
      a *= rest;
  }
  if (a == 1 && b == 1) throw std::domain_error("canonicalize: m is a perfect cube");
  if (a < b) std::swap(a, b);
  return PureCubicField::from_couple(CarefreeCouple{a, b});
}

IntegralBasis integral_basis(const PureCubicField& K) {
  IntegralBasis basis;
  basis.elements[0] = {Rational(1), Rational(0), Rational(0)};
  if (K.type == FieldType::I) {
    basis.elements[1] = {Rational(0), Rational(1), Rational(0)};
    basis.elements[2] = {Rational(0), Rational(0), Rational(1, K.couple.b)};
    basis.sign = 0;
  } else {
    int eps = (K.m % 9 == 1) ? 1 : -1;
    basis.elements[1] = {Rational(1, 3), Rational(eps, 3), Rational(1, 3)};
    basis.elements[2] = {Rational(0), Rational(0), Rational(1, K.couple.b)};
    basis.sign = eps;
  }
  return basis;
}

void enumerate_fields(std::int64_t X, const std::optional<RatioWindow>& window,
                      const std::function<void(const PureCubicField&)>& yield) {
  if (X < 1) throw std::invalid_argument("enumerate_fields: X must be >= 1");
  if (window && !(Rational(1) <= window->lo && window->lo < window->hi))
    throw std::invalid_argument("enumerate_fields: need 1 <= lo < hi");

  // Largest product P with 3 P^2 <= X covers both types (the Type I bound
  // 27 P^2 <= X is tighter and checked per couple).
  std::int64_t P = isqrt64(X / 3);
  if (P < 2) return;
  auto sf = arith::build_squarefree_sieve(static_cast<std::uint64_t>(P));

  struct Hit {
    std::int64_t ab, a, b;
  };
  std::vector<Hit> hits;
  for (std::int64_t b = 1; b * (b + 1) <= P; ++b) {
    if (!sf.is_squarefree(static_cast<std::uint64_t>(b))) continue;
    for (std::int64_t a = b + 1; a * b <= P; ++a) {
      if (!sf.is_squarefree(static_cast<std::uint64_t>(a))) continue;
      if (std::gcd(a, b) != 1) continue;
      FieldType t = classify(a, b);
      i128 ab2 = i128(a) * b * i128(a) * b;
      if ((t == FieldType::I ? 27 : 3) * ab2 > i128(X)) continue;
      if (window) {
        if (!(i128(a) * window->lo.den() > i128(b) * window->lo.num())) continue;
        if (!(i128(a) * window->hi.den() < i128(b) * window->hi.num())) continue;
      }
      hits.push_back({a * b, a, b});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& u, const Hit& v) {
    return u.ab != v.ab ? u.ab < v.ab : u.a < v.a;
  });
  for (const Hit& h : hits) yield(PureCubicField::from_couple(CarefreeCouple{h.a, h.b}));
}

std::vector<PureCubicField> list_fields(std::int64_t X, const std::optional<RatioWindow>& window) {
  std::vector<PureCubicField> out;
  enumerate_fields(X, window, [&](const PureCubicField& K) { out.push_back(K); });
  return out;
}

}  // namespace cubeshape::fields
