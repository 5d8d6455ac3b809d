#include "cubeshape/shapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "cubeshape/errors.hpp"

namespace cubeshape::shapes {

namespace {
using fields::FieldType;
using i128 = __int128;

double cbrt_ratio(const Rational& r) { return std::cbrt(r.to_double()); }
}  // namespace

double GramEntry::eval(double ratio) const {
  double t = std::cbrt(ratio);
  return c0.to_double() + c1.to_double() * t * t;
}

ExactGram gram_perp(const fields::PureCubicField& K) {
  ExactGram g;
  if (K.type == FieldType::I) {
    g.e00 = {Rational(3), Rational(0)};
    g.e01 = {Rational(0), Rational(0)};
    g.e11 = {Rational(0), Rational(3)};
  } else {
    g.e00 = {Rational(3), Rational(0)};
    g.e01 = {Rational(1), Rational(0)};
    g.e11 = {Rational(1, 3), Rational(1, 3)};
  }
  return g;
}

std::complex<double> point_from_gram(const Mat2& B) {
  double b00 = B[0][0];
  double det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
  if (!(b00 > 0.0) || !(det > 0.0))
    throw std::domain_error("point_from_gram: matrix is not positive definite");
  double x = B[0][1] / b00;
  double y = std::sqrt(B[1][1] / b00 - x * x);
  return {x, y};
}

std::complex<double> point_from_gram(const ExactGram& B, double ratio) {
  Mat2 M{{{B.e00.eval(ratio), B.e01.eval(ratio)}, {B.e01.eval(ratio), B.e11.eval(ratio)}}};
  return point_from_gram(M);
}

std::int64_t UnimodularMatrix::det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
  UnimodularMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
  return r;
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  std::int64_t d = det();
  UnimodularMatrix r;
  if (d == 1)
    r.m = {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
  else if (d == -1)
    r.m = {{{-m[1][1], m[0][1]}, {m[1][0], -m[0][0]}}};
  else
    throw std::domain_error("inverse: determinant must be +-1");
  return r;
}

std::complex<double> UnimodularMatrix::apply(std::complex<double> z) const {
  std::int64_t d = det();
  if (d != 1 && d != -1) throw std::domain_error("apply: determinant must be +-1");
  std::complex<double> w = (d == 1) ? z : std::conj(z);
  std::complex<double> num = static_cast<double>(m[0][0]) * w + static_cast<double>(m[0][1]);
  std::complex<double> den = static_cast<double>(m[1][0]) * w + static_cast<double>(m[1][1]);
  return num / den;
}

UnimodularMatrix UnimodularMatrix::identity() { return UnimodularMatrix{}; }
UnimodularMatrix UnimodularMatrix::W() { return UnimodularMatrix{{{{0, 1}, {1, 0}}}}; }
UnimodularMatrix UnimodularMatrix::S() { return UnimodularMatrix{{{{0, -1}, {1, 0}}}}; }
UnimodularMatrix UnimodularMatrix::U() { return UnimodularMatrix{{{{1, -1}, {0, 1}}}}; }

int reduction_interval(const Rational& ratio) {
  if (!(ratio > Rational(1))) throw std::invalid_argument("reduction_interval: need r > 1");
  i128 a2 = i128(ratio.num()) * ratio.num();
  i128 b2 = i128(ratio.den()) * ratio.den();
  for (std::int64_t cut : {512, 125, 8}) {
    if (a2 == cut * b2)
      throw consistency_error("reduction_interval: ratio sits on an interval boundary");
  }
  if (a2 > 512 * b2) return 0;
  if (a2 > 125 * b2) return 1;
  if (a2 > 8 * b2) return 2;
  return 3;
}

UnimodularMatrix interval_reducer(int interval) {
  switch (interval) {
    case 0: return UnimodularMatrix::identity();
    case 1: return UnimodularMatrix::W();
    case 2: return UnimodularMatrix{{{{-1, 1}, {-1, 0}}}};
    case 3: return UnimodularMatrix{{{{1, -1}, {-1, 0}}}};
    default: throw std::invalid_argument("interval_reducer: interval must be 0..3");
  }
}

ShapePoint reduce_to_fundamental_domain(const ShapePoint& p) {
  ShapePoint r = p;
  if (p.type == FieldType::I) {
    // x = 0, y = r^{1/3} > 1: already reduced.
    r.reducer = UnimodularMatrix::identity();
    r.reduced_z = r.z;
    return r;
  }
  r.reducer = interval_reducer(reduction_interval(p.ratio));
  r.reduced_z = r.reducer.apply(r.z);
  return r;
}

ShapePoint shape(const fields::PureCubicField& K) {
  ShapePoint p;
  p.type = K.type;
  p.ratio = K.ratio;
  if (K.type == FieldType::I) {
    p.x = Rational(0);
    p.y_cubed = K.ratio;
  } else {
    p.x = Rational(1, 3);
    p.y_cubed = K.ratio / Rational(27);
  }
  p.z = {p.x.to_double(), cbrt_ratio(p.y_cubed)};
  return reduce_to_fundamental_domain(p);
}

bool in_fundamental_domain(std::complex<double> z, double tol) {
  if (!(z.imag() > 0)) return false;
  if (z.real() < -tol || z.real() > 0.5 + tol) return false;
  return std::norm(z) >= 1.0 - 2.0 * tol;
}

namespace {

// Embedding j(theta) = (sigma(theta), Re tau(theta), Im tau(theta)) of
// theta = c0 + c1 alpha + c2 alpha^2 with alpha real, tau the complex
// embedding; lengths are taken against diag(1, 2, 2).
std::array<double, 3> embed(const fields::BasisElement& e, double al) {
  double c0 = e.c0.to_double(), c1 = e.c1.to_double(), c2 = e.c2.to_double();
  double al2 = al * al;
  double sigma = c0 + c1 * al + c2 * al2;
  double re_tau = c0 - 0.5 * (c1 * al + c2 * al2);
  double im_tau = 0.5 * std::numbers::sqrt3 * (c1 * al - c2 * al2);
  return {sigma, re_tau, im_tau};
}

double dot(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  return u[0] * v[0] + 2.0 * u[1] * v[1] + 2.0 * u[2] * v[2];
}

// Component orthogonal to j(1) = (1, 1, 0), which has length^2 = 3.
std::array<double, 3> perp(const std::array<double, 3>& u) {
  double c = dot(u, {1.0, 1.0, 0.0}) / 3.0;
  return {u[0] - c, u[1] - c, u[2]};
}

}  // namespace

Mat3 numeric_embedding_gram(const fields::PureCubicField& K) {
  double al = std::cbrt(static_cast<double>(K.m));
  auto basis = fields::integral_basis(K);
  std::array<std::array<double, 3>, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = embed(basis.elements[i], al);
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = dot(v[i], v[j]);
  return g;
}

Mat2 numeric_perp_gram(const fields::PureCubicField& K) {
  double al = std::cbrt(static_cast<double>(K.m));
  auto basis = fields::integral_basis(K);
  auto p2 = perp(embed(basis.elements[1], al));
  auto p3 = perp(embed(basis.elements[2], al));

  std::array<double, 3> v1, v2;
  if (K.type == FieldType::I) {
    v1 = p2;
    v2 = p3;
  } else {
    // Unimodular change of basis (3 -b; 1 -k) from {nu_perp, beta_perp},
    // with b = 3k + eps_b and eps_b = +-1 = b mod 3 (so its determinant is
    // eps_b). Note eps_b is unrelated to the sign in nu itself.
    std::int64_t b = K.couple.b;
    std::int64_t eps_b = (b % 3 == 1) ? 1 : -1;
    std::int64_t k = (b - eps_b) / 3;
    for (int i = 0; i < 3; ++i) {
      v1[i] = 3.0 * p2[i] - static_cast<double>(b) * p3[i];
      v2[i] = p2[i] - static_cast<double>(k) * p3[i];
    }
  }
  return Mat2{{{dot(v1, v1), dot(v1, v2)}, {dot(v2, v1), dot(v2, v2)}}};
}

InjectivityReport verify_injectivity(std::span<const fields::PureCubicField> fields_in) {
  InjectivityReport rep;
  std::unordered_set<std::string> keys;
  keys.reserve(fields_in.size() * 2);
  for (const auto& K : fields_in) {
    ShapePoint p = shape(K);
    std::string key = std::string(fields::to_string(p.type)) + "|" + p.x.str() + "|" +
                      p.y_cubed.str();
    if (!keys.insert(std::move(key)).second) ++rep.collisions;
    ++rep.n_fields;
  }
  rep.n_keys = keys.size();

  auto k6 = fields::canonicalize(6);
  auto k12 = fields::canonicalize(12);
  rep.six_twelve_same_discriminant = (k6.discriminant == k12.discriminant);
  ShapePoint s6 = shape(k6);
  ShapePoint s12 = shape(k12);
  rep.six_twelve_distinct_shapes =
      !(s6.type == s12.type && s6.x == s12.x && s6.y_cubed == s12.y_cubed);
  return rep;
}

}  // namespace cubeshape::shapes
