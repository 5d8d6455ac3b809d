#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "cubeshape/errors.hpp"
#include "cubeshape/fields.hpp"
#include "cubeshape/shapes.hpp"
#include "oracle_helpers.hpp"

using namespace cubeshape;
using shapes::UnimodularMatrix;

namespace {

double det3(const shapes::Mat3& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

// Distance from the reduced point to its assigned locus: the vertical line
// Re z = 1/3 for interval 0, or one of the radius-3/2 circles centered at
// 3/2, -1/2, 1/2 for intervals 1..3.
double locus_error(int interval, std::complex<double> z) {
  switch (interval) {
    case 0: return std::abs(z.real() - 1.0 / 3.0);
    case 1: return std::abs(std::abs(z - std::complex<double>(1.5, 0)) - 1.5);
    case 2: return std::abs(std::abs(z + std::complex<double>(0.5, 0)) - 1.5);
    default: return std::abs(std::abs(z - std::complex<double>(0.5, 0)) - 1.5);
  }
}

}  // namespace

TEST_CASE("exact normalized Gram matrices") {
  auto gI = shapes::gram_perp(fields::canonicalize(6));
  CHECK(gI.e00.c0 == Rational(3));
  CHECK(gI.e00.c1 == Rational(0));
  CHECK(gI.e01.c0 == Rational(0));
  CHECK(gI.e01.c1 == Rational(0));
  CHECK(gI.e11.c0 == Rational(0));
  CHECK(gI.e11.c1 == Rational(3));

  auto gII = shapes::gram_perp(fields::canonicalize(10));
  CHECK(gII.e00.c0 == Rational(3));
  CHECK(gII.e01.c0 == Rational(1));
  CHECK(gII.e01.c1 == Rational(0));
  CHECK(gII.e11.c0 == Rational(1, 3));
  CHECK(gII.e11.c1 == Rational(1, 3));
}

TEST_CASE("upper-half-plane point of a Gram matrix") {
  shapes::Mat2 id{{{1, 0}, {0, 1}}};
  auto z = shapes::point_from_gram(id);
  CHECK(z.real() == 0.0);
  CHECK(z.imag() == 1.0);

  double c = std::cbrt(6.0);
  shapes::Mat2 scaled{{{3, 0}, {0, 3 * c * c}}};
  auto z6 = shapes::point_from_gram(scaled);
  CHECK(std::abs(z6.imag() - c) < 1e-14);

  CHECK_THROWS_AS(shapes::point_from_gram(shapes::Mat2{{{1, 2}, {2, 1}}}), std::domain_error);
  CHECK_THROWS_AS(shapes::point_from_gram(shapes::Mat2{{{-1, 0}, {0, 1}}}), std::domain_error);
}

TEST_CASE("shape invariants of the classic small fields") {
  auto s6 = shapes::shape(fields::canonicalize(6));
  CHECK(s6.type == fields::FieldType::I);
  CHECK(s6.x == Rational(0));
  CHECK(s6.y_cubed == Rational(6));
  CHECK(s6.z.real() == 0.0);
  CHECK(std::abs(s6.z.imag() - std::cbrt(6.0)) < 1e-14);
  CHECK(s6.reducer == UnimodularMatrix::identity());
  CHECK(s6.reduced_z == s6.z);

  auto s12 = shapes::shape(fields::canonicalize(12));
  CHECK(s12.y_cubed == Rational(3, 2));
  CHECK(std::abs(s12.z.imag() - std::cbrt(1.5)) < 1e-14);

  // same discriminant, distinct shapes
  CHECK(fields::canonicalize(6).discriminant == fields::canonicalize(12).discriminant);
  CHECK(s6.y_cubed != s12.y_cubed);

  auto s10 = shapes::shape(fields::canonicalize(10));
  CHECK(s10.type == fields::FieldType::II);
  CHECK(s10.x == Rational(1, 3));
  CHECK(s10.y_cubed == Rational(10, 27));
  CHECK(std::abs(s10.z.real() - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(s10.z.imag() - 0.7181448966772945) < 1e-13);
}

TEST_CASE("interval selection on the cube-root scale is exact") {
  CHECK(shapes::reduction_interval(Rational(23)) == 0);   // 23^2 > 512
  CHECK(shapes::reduction_interval(Rational(22)) == 1);   // 125 < 484 < 512
  CHECK(shapes::reduction_interval(Rational(10)) == 2);   // 8 < 100 < 125
  CHECK(shapes::reduction_interval(Rational(3)) == 2);    // 8 < 9
  CHECK(shapes::reduction_interval(Rational(2)) == 3);    // 4 < 8
  CHECK(shapes::reduction_interval(Rational(13, 5)) == 3);
  CHECK_THROWS_AS(shapes::reduction_interval(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(shapes::reduction_interval(Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(shapes::interval_reducer(4), std::invalid_argument);
}

TEST_CASE("reduction lands on the assigned boundary locus") {
  struct Case {
    std::int64_t m;
    int interval;
  };
  // 26 = 8 (mod 9), ratio 26; 17: ratio 17; 10: ratio 10; 325 = 13 * 5^2
  for (Case c : {Case{26, 0}, Case{17, 1}, Case{10, 2}, Case{325, 3}}) {
    auto K = fields::canonicalize(c.m);
    REQUIRE(K.type == fields::FieldType::II);
    auto p = shapes::shape(K);
    CAPTURE(c.m);
    CHECK(shapes::reduction_interval(p.ratio) == c.interval);
    CHECK(p.reducer == shapes::interval_reducer(c.interval));
    CHECK(shapes::in_fundamental_domain(p.reduced_z));
    CHECK(locus_error(c.interval, p.reduced_z) < 1e-9);
    // the stored matrix really is the one that was applied
    CHECK(std::abs(p.reducer.apply(p.z) - p.reduced_z) < 1e-15);
  }
}

TEST_CASE("reduction properties across all small type II fields") {
  // |disc| <= 3 * 2000^2 covers every type II couple with ab <= 2000
  for (const auto& K : fields::list_fields(12000000)) {
    if (K.type != fields::FieldType::II) continue;
    auto p = shapes::shape(K);
    int interval = shapes::reduction_interval(p.ratio);
    CAPTURE(K.m);
    CHECK(shapes::in_fundamental_domain(p.reduced_z));
    CHECK(locus_error(interval, p.reduced_z) < 1e-9);
    CHECK(std::abs(p.reduced_z - oracle::gauss_reduce(p.z)) < 1e-9);
  }
}

TEST_CASE("type I shapes are born reduced") {
  for (const auto& K : fields::list_fields(2000000)) {
    if (K.type != fields::FieldType::I) continue;
    auto p = shapes::shape(K);
    CHECK(p.reducer == UnimodularMatrix::identity());
    CHECK(shapes::in_fundamental_domain(p.reduced_z));
    CHECK(std::abs(p.reduced_z - oracle::gauss_reduce(p.z)) < 1e-12);
  }
}

TEST_CASE("half-plane action: W, composition, inverses") {
  auto W = UnimodularMatrix::W();
  std::complex<double> z{0.3, 1.7};
  auto w = W.apply(z);
  auto expect = 1.0 / std::conj(z);
  CHECK(std::abs(w - expect) < 1e-15);

  auto rng = oracle::rng(5);
  std::uniform_int_distribution<int> pick(0, 2), len(1, 8);
  std::uniform_real_distribution<double> coord(0.05, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::complex<double> z0{coord(rng), coord(rng) + 0.2};
    UnimodularMatrix prod = UnimodularMatrix::identity();
    std::complex<double> stepped = z0;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      UnimodularMatrix g;
      switch (pick(rng)) {
        case 0: g = UnimodularMatrix::S(); break;
        case 1: g = UnimodularMatrix::U(); break;
        default: g = UnimodularMatrix::W(); break;
      }
      stepped = g.apply(stepped);
      prod = g * prod;
    }
    CHECK((prod.det() == 1 || prod.det() == -1));
    CHECK(std::abs(prod.apply(z0) - stepped) < 1e-9);
    CHECK(prod.inverse() * prod == UnimodularMatrix::identity());
    CHECK(std::abs(prod.inverse().apply(stepped) - z0) < 1e-9);
  }

  UnimodularMatrix bad{{{{2, 0}, {0, 1}}}};
  CHECK_THROWS_AS(bad.inverse(), std::domain_error);
  CHECK_THROWS_AS(bad.apply(z), std::domain_error);
}

TEST_CASE("fundamental domain membership") {
  CHECK(shapes::in_fundamental_domain({0.0, 1.0}));
  CHECK(shapes::in_fundamental_domain({0.5, 0.8660254037844386}));  // corner
  CHECK(shapes::in_fundamental_domain({0.2, 5.0}));
  CHECK_FALSE(shapes::in_fundamental_domain({0.25, 0.9}));
  CHECK_FALSE(shapes::in_fundamental_domain({0.6, 2.0}));
  CHECK_FALSE(shapes::in_fundamental_domain({-0.1, 2.0}));
  CHECK_FALSE(shapes::in_fundamental_domain({0.1, -2.0}));
}

TEST_CASE("numeric Gram pipeline agrees with the exact forms") {
  // every couple with ab <= 1000 appears below |disc| <= 27 * 10^6
  for (const auto& K : fields::list_fields(27000000)) {
    if (K.couple.a * K.couple.b > 1000) continue;
    CAPTURE(K.m);
    double r = K.ratio.to_double();
    double t = std::cbrt(r);

    // closed-form point vs the Gram route
    auto z = shapes::point_from_gram(shapes::gram_perp(K), r);
    if (K.type == fields::FieldType::I) {
      CHECK(std::abs(z.real()) < 1e-12);
      CHECK(std::abs(z.imag() - t) < 1e-12 * t);
    } else {
      CHECK(std::abs(z.real() - 1.0 / 3.0) < 1e-12);
      CHECK(std::abs(z.imag() - t / 3.0) < 1e-12 * t);
    }

    // embedding-side Gram vs the exact one, rescaled by alpha^2 = m^{2/3}
    double al2 = std::cbrt(static_cast<double>(K.m));
    al2 *= al2;
    auto exact = shapes::gram_perp(K);
    auto numeric = shapes::numeric_perp_gram(K);
    CHECK(std::abs(numeric[0][0] - exact.e00.eval(r) * al2) < 1e-9 * al2);
    CHECK(std::abs(numeric[0][1] - exact.e01.eval(r) * al2) < 1e-9 * al2);
    CHECK(std::abs(numeric[1][1] - exact.e11.eval(r) * al2) < 1e-9 * al2);

    // determinant identities against |disc|
    double absD = std::abs(static_cast<double>(K.discriminant));
    double det2 = numeric[0][0] * numeric[1][1] - numeric[0][1] * numeric[1][0];
    CHECK(std::abs(3.0 * det2 - absD) < 1e-9 * absD);
    CHECK(std::abs(det3(shapes::numeric_embedding_gram(K)) - absD) < 1e-9 * absD);
  }
}

TEST_CASE("exact shape keys are injective over a large range") {
  auto list = fields::list_fields(100000000);
  auto rep = shapes::verify_injectivity(list);
  CHECK(rep.n_fields == list.size());
  CHECK(rep.n_fields > 4000);
  CHECK(rep.collisions == 0);
  CHECK(rep.n_keys == rep.n_fields);
  CHECK(rep.six_twelve_same_discriminant);
  CHECK(rep.six_twelve_distinct_shapes);

  auto one = fields::list_fields(108);
  auto rep1 = shapes::verify_injectivity(one);
  CHECK(rep1.n_fields == 1);
  CHECK(rep1.collisions == 0);
}
