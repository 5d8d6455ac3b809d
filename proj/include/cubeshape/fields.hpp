#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cubeshape/rational.hpp"

namespace cubeshape::fields {

// A pure cubic field Q(m^{1/3}) is presented by its carefree couple (a, b):
// m = a b^2 with a, b coprime and squarefree, normalized so that a > b
// (swapping m for its conjugate parameter m' = a^2 b when needed).
enum class FieldType { I, II };
const char* to_string(FieldType t);

struct CarefreeCouple {
  std::int64_t a = 1;
  std::int64_t b = 1;
  // Validates gcd(a, b) = 1, a and b squarefree, a > b >= 1.
  static CarefreeCouple make(std::int64_t a, std::int64_t b);
};

// Type II iff 3 does not divide m and m = +-1 (mod 9); equivalently
// 3 does not divide ab and a^2 = b^2 (mod 9). Discriminant is -27 (ab)^2
// for Type I and -3 (ab)^2 for Type II.
FieldType classify(std::int64_t a, std::int64_t b);

struct PureCubicField {
  CarefreeCouple couple;
  std::int64_t m = 0;        // a b^2
  std::int64_t m_prime = 0;  // a^2 b
  FieldType type = FieldType::I;
  std::int64_t discriminant = 0;
  Rational ratio;  // a/b, already in lowest terms

  static PureCubicField from_couple(const CarefreeCouple& c);
};

// Strips the cube part of m_raw >= 2, forms the couple, and swaps to the
// a > b representative. Throws std::domain_error when m_raw is a perfect
// cube (the field degenerates) and std::invalid_argument when m_raw < 2.
PureCubicField canonicalize(std::int64_t m_raw);

// Coordinates over {1, alpha, alpha^2}, alpha = m^{1/3}.
struct BasisElement {
  Rational c0, c1, c2;
};
// Type I: {1, alpha, alpha^2 / b}. Type II: {1, nu, alpha^2 / b} with
// nu = (1 + eps alpha + alpha^2)/3 and eps = m mod 9 in {+1, -1}.
// sign = eps for Type II, 0 for Type I.
struct IntegralBasis {
  std::array<BasisElement, 3> elements;
  int sign = 0;
};
IntegralBasis integral_basis(const PureCubicField& K);

// Open interval on the ratio a/b.
struct RatioWindow {
  Rational lo;
  Rational hi;
};

// All fields with |discriminant| <= X (and ratio strictly inside the window,
// when given), visited in increasing (ab, a) order.
void enumerate_fields(std::int64_t X, const std::optional<RatioWindow>& window,
                      const std::function<void(const PureCubicField&)>& yield);
std::vector<PureCubicField> list_fields(std::int64_t X,
                                        const std::optional<RatioWindow>& window = {});

}  // namespace cubeshape::fields
