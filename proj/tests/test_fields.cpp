#include <doctest.h>

#include <array>
#include <cstdint>
#include <numeric>

#include "cubeshape/arith.hpp"
#include "cubeshape/fields.hpp"
#include "oracle_helpers.hpp"

using namespace cubeshape;

namespace {

using RMat3 = std::array<std::array<Rational, 3>, 3>;

// Multiplication matrix of theta = c0 + c1 alpha + c2 alpha^2 acting on the
// basis {1, alpha, alpha^2}, alpha^3 = m.
RMat3 mult_matrix(const fields::BasisElement& e, std::int64_t m) {
  Rational c0 = e.c0, c1 = e.c1, c2 = e.c2, M(m);
  // columns: theta * 1, theta * alpha, theta * alpha^2
  return RMat3{{{c0, c2 * M, c1 * M},
                {c1, c0, c2 * M},
                {c2, c1, c0}}};
}

// Characteristic polynomial coefficients (x^3 - t x^2 + s x - d).
struct CharPoly {
  Rational t, s, d;
};
CharPoly charpoly(const RMat3& M) {
  CharPoly c;
  c.t = M[0][0] + M[1][1] + M[2][2];
  c.s = (M[0][0] * M[1][1] - M[0][1] * M[1][0]) + (M[0][0] * M[2][2] - M[0][2] * M[2][0]) +
        (M[1][1] * M[2][2] - M[1][2] * M[2][1]);
  c.d = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
        M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
        M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  return c;
}

bool is_algebraic_integer(const fields::BasisElement& e, std::int64_t m) {
  auto c = charpoly(mult_matrix(e, m));
  return c.t.is_integer() && c.s.is_integer() && c.d.is_integer();
}

}  // namespace

TEST_CASE("couple validation") {
  CHECK_NOTHROW(fields::CarefreeCouple::make(2, 1));
  CHECK_NOTHROW(fields::CarefreeCouple::make(10, 3));
  CHECK_THROWS_AS(fields::CarefreeCouple::make(4, 1), std::invalid_argument);   // 4 = 2^2
  CHECK_THROWS_AS(fields::CarefreeCouple::make(6, 3), std::invalid_argument);   // gcd 3
  CHECK_THROWS_AS(fields::CarefreeCouple::make(1, 1), std::invalid_argument);   // a > b fails
  CHECK_THROWS_AS(fields::CarefreeCouple::make(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(fields::CarefreeCouple::make(5, 0), std::invalid_argument);
}

TEST_CASE("canonicalize: cube stripping and the a > b convention") {
  auto k6 = fields::canonicalize(6);
  CHECK(k6.couple.a == 6);
  CHECK(k6.couple.b == 1);
  CHECK(k6.m == 6);
  CHECK(k6.m_prime == 36);
  CHECK(k6.type == fields::FieldType::I);
  CHECK(k6.discriminant == -972);
  CHECK(k6.ratio == Rational(6));

  auto k12 = fields::canonicalize(12);  // 12 = 3 * 2^2 -> (3, 2)
  CHECK(k12.couple.a == 3);
  CHECK(k12.couple.b == 2);
  CHECK(k12.m == 12);
  CHECK(k12.m_prime == 18);
  CHECK(k12.discriminant == -972);
  CHECK(k12.ratio == Rational(3, 2));

  // 4 = 1 * 2^2 swaps to the conjugate parameter (2, 1), so m becomes 2
  auto k4 = fields::canonicalize(4);
  CHECK(k4.couple.a == 2);
  CHECK(k4.couple.b == 1);
  CHECK(k4.m == 2);
  CHECK(k4.m_prime == 4);

  // cube factors are stripped first: 48 = 2^4 * 3 -> 2 * 3 = 6
  auto k48 = fields::canonicalize(48);
  CHECK(k48.couple.a == 6);
  CHECK(k48.couple.b == 1);

  // 49 = 7^2 -> couple (7, 1)
  auto k49 = fields::canonicalize(49);
  CHECK(k49.couple.a == 7);
  CHECK(k49.couple.b == 1);
  CHECK(k49.m == 7);

  CHECK_THROWS_AS(fields::canonicalize(8), std::domain_error);
  CHECK_THROWS_AS(fields::canonicalize(27), std::domain_error);
  CHECK_THROWS_AS(fields::canonicalize(1000000), std::domain_error);  // 100^3
  CHECK_THROWS_AS(fields::canonicalize(1), std::invalid_argument);
  CHECK_THROWS_AS(fields::canonicalize(0), std::invalid_argument);
  CHECK_THROWS_AS(fields::canonicalize(-5), std::invalid_argument);
}

TEST_CASE("canonicalize is invariant under m <-> m_prime") {
  auto is_cube = [](std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::cbrt(static_cast<double>(n)));
    for (std::int64_t t = std::max<std::int64_t>(1, r - 1); t <= r + 1; ++t)
      if (t * t * t == n) return true;
    return false;
  };
  for (std::int64_t m = 2; m <= 100000; ++m) {
    if (is_cube(m)) continue;
    auto K = fields::canonicalize(m);
    auto Kp = fields::canonicalize(K.m_prime);
    CHECK(K.couple.a == Kp.couple.a);
    CHECK(K.couple.b == Kp.couple.b);
  }
}

TEST_CASE("type criterion matches the residue of m mod 9") {
  auto sf = arith::build_squarefree_sieve(500);
  for (std::int64_t a = 2; a <= 500; ++a) {
    if (!sf.is_squarefree(static_cast<std::uint64_t>(a))) continue;
    for (std::int64_t b = 1; b < a && a * b <= 500; ++b) {
      if (!sf.is_squarefree(static_cast<std::uint64_t>(b))) continue;
      if (std::gcd(a, b) != 1) continue;
      std::int64_t m = a * b * b;
      bool two = (m % 3 != 0) && (m % 9 == 1 || m % 9 == 8);
      CHECK((fields::classify(a, b) == fields::FieldType::II) == two);
    }
  }
  CHECK_THROWS_AS(fields::classify(0, 1), std::invalid_argument);
}

TEST_CASE("discriminant is divisible by 27 exactly for type I") {
  for (const auto& K : fields::list_fields(200000)) {
    if (K.type == fields::FieldType::I)
      CHECK(K.discriminant % 27 == 0);
    else
      CHECK(K.discriminant % 27 != 0);
    CHECK(K.discriminant % 3 == 0);
    CHECK(K.discriminant < 0);
  }
}

TEST_CASE("integral basis coordinates") {
  auto b6 = fields::integral_basis(fields::canonicalize(6));
  CHECK(b6.sign == 0);
  CHECK(b6.elements[1].c1 == Rational(1));
  CHECK(b6.elements[2].c2 == Rational(1));

  auto b12 = fields::integral_basis(fields::canonicalize(12));
  CHECK(b12.elements[2].c2 == Rational(1, 2));

  auto k10 = fields::canonicalize(10);  // 10 = 1 (mod 9)
  auto b10 = fields::integral_basis(k10);
  CHECK(b10.sign == 1);
  CHECK(b10.elements[1].c0 == Rational(1, 3));
  CHECK(b10.elements[1].c1 == Rational(1, 3));
  CHECK(b10.elements[1].c2 == Rational(1, 3));

  auto k17 = fields::canonicalize(17);  // 17 = 8 (mod 9)
  auto b17 = fields::integral_basis(k17);
  CHECK(b17.sign == -1);
  CHECK(b17.elements[1].c1 == Rational(-1, 3));
}

TEST_CASE("basis elements are algebraic integers") {
  for (std::int64_t m_raw : {2, 6, 10, 12, 17, 19, 26, 28, 35, 37, 44, 63, 90, 91}) {
    auto K = fields::canonicalize(m_raw);
    auto basis = fields::integral_basis(K);
    for (const auto& e : basis.elements) {
      CAPTURE(m_raw);
      CHECK(is_algebraic_integer(e, K.m));
    }
  }
  // flipping the sign in the type II numerator must break integrality
  auto K = fields::canonicalize(17);
  fields::BasisElement wrong{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  CHECK_FALSE(is_algebraic_integer(wrong, K.m));
}

TEST_CASE("field enumeration at X = 1000") {
  auto list = fields::list_fields(1000);
  REQUIRE(list.size() == 8);
  const std::array<std::pair<std::int64_t, std::int64_t>, 8> expect{{
      {2, 1}, {3, 1}, {5, 1}, {3, 2}, {6, 1}, {10, 1}, {7, 2}, {17, 1}}};
  int n_ii = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    CHECK(list[i].couple.a == expect[i].first);
    CHECK(list[i].couple.b == expect[i].second);
    CHECK(std::abs(list[i].discriminant) <= 1000);
    if (list[i].type == fields::FieldType::II) ++n_ii;
  }
  CHECK(n_ii == 3);
}

TEST_CASE("field enumeration near the first discriminant") {
  CHECK(fields::list_fields(107).empty());
  auto first = fields::list_fields(108);
  REQUIRE(first.size() == 1);
  CHECK(first[0].couple.a == 2);
  CHECK(first[0].couple.b == 1);
  CHECK(first[0].discriminant == -108);
}

TEST_CASE("enumeration visits fields in increasing (ab, a) order") {
  std::int64_t prev_ab = 0, prev_a = 0;
  for (const auto& K : fields::list_fields(500000)) {
    std::int64_t ab = K.couple.a * K.couple.b;
    CHECK((ab > prev_ab || (ab == prev_ab && K.couple.a > prev_a)));
    prev_ab = ab;
    prev_a = K.couple.a;
  }
}

TEST_CASE("ratio window is strict on both ends") {
  fields::RatioWindow w{Rational(1), Rational(3)};
  auto list = fields::list_fields(1000, w);
  REQUIRE(list.size() == 2);
  CHECK(list[0].couple.a == 2);  // ratio 2
  CHECK(list[1].couple.a == 3);  // ratio 3/2
  CHECK(list[1].couple.b == 2);

  // ratio exactly 3 sits on the boundary and is excluded; nudging the upper
  // edge brings (3, 1) in
  fields::RatioWindow w2{Rational(1), Rational(3, 1) + Rational(1, 1000)};
  auto list2 = fields::list_fields(1000, w2);
  CHECK(list2.size() == 3);

  CHECK_THROWS_AS(fields::list_fields(1000, fields::RatioWindow{Rational(3), Rational(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fields::list_fields(0), std::invalid_argument);
}
