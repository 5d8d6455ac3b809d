#pragma once

#include <array>
#include <complex>
#include <span>

#include "cubeshape/fields.hpp"
#include "cubeshape/rational.hpp"

namespace cubeshape::shapes {

// Entry of the rank-2 Gram matrix after dividing by alpha^2 = m^{2/3}:
// the value is c0 + c1 * r^{2/3} with r = a/b the ratio of the couple.
struct GramEntry {
  Rational c0, c1;
  double eval(double ratio) const;
};

// Symmetric 2x2 Gram matrix of the trace-zero lattice in the normalization
// above. Type I (basis {alpha_perp, beta_perp}):
//   [[3, 0], [0, 3 r^{2/3}]]
// Type II (basis {3 nu_perp - b beta_perp, nu_perp - k beta_perp}):
//   [[3, 1], [1, (1 + r^{2/3})/3]]
struct ExactGram {
  GramEntry e00, e01, e11;
};
ExactGram gram_perp(const fields::PureCubicField& K);

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Upper-half-plane point of a rank-2 Gram matrix B (positive definite):
// x = B01/B00, y = sqrt(B11/B00 - x^2).
std::complex<double> point_from_gram(const Mat2& B);
std::complex<double> point_from_gram(const ExactGram& B, double ratio);

// Integer 2x2 matrix with determinant +-1 acting on the upper half plane;
// determinant -1 acts through z -> conj(z) first, so W = (0 1; 1 0) sends
// z to 1/conj(z).
struct UnimodularMatrix {
  std::array<std::array<std::int64_t, 2>, 2> m{{{1, 0}, {0, 1}}};

  std::int64_t det() const;
  UnimodularMatrix operator*(const UnimodularMatrix& o) const;
  UnimodularMatrix inverse() const;
  std::complex<double> apply(std::complex<double> z) const;
  bool operator==(const UnimodularMatrix& o) const = default;

  static UnimodularMatrix identity();
  static UnimodularMatrix W();  // (0 1; 1 0)
  static UnimodularMatrix S();  // (0 -1; 1 0)
  static UnimodularMatrix U();  // (1 -1; 0 1)
};

struct ShapePoint {
  fields::FieldType type = fields::FieldType::I;
  Rational ratio;
  Rational x;        // exact real part: 0 (Type I) or 1/3 (Type II)
  Rational y_cubed;  // exact cube of the imaginary part: r or r/27
  std::complex<double> z;
  std::complex<double> reduced_z;
  UnimodularMatrix reducer;  // reducer.apply(z) == reduced_z
};

// Shape invariant of the field: z = x + i y with y = y_cubed^{1/3}, already
// carried into the fundamental domain (reduced_z, reducer).
ShapePoint shape(const fields::PureCubicField& K);

// Deterministic reduction into F = {0 <= Re z <= 1/2, |z| >= 1}. The case
// split is exact on the rational ratio, so no float comparison can sit on a
// boundary; an exact tie (impossible for valid couples) throws.
ShapePoint reduce_to_fundamental_domain(const ShapePoint& p);

// Interval of t = r^{1/3} among (sqrt8, inf) -> 0, (sqrt5, sqrt8) -> 1,
// (sqrt2, sqrt5) -> 2, (1, sqrt2) -> 3, decided exactly on r^2.
int reduction_interval(const Rational& ratio);
// The matrix applied for each interval: identity, W, (-1 1; -1 0),
// (1 -1; -1 0). Reduced Type II points land on Re z = 1/3 for interval 0
// and on |z - 3/2| = 3/2, |z + 1/2| = 3/2, |z - 1/2| = 3/2 respectively.
UnimodularMatrix interval_reducer(int interval);

bool in_fundamental_domain(std::complex<double> z, double tol = 1e-12);

// 3x3 Gram matrix of the integral basis under the real embedding
// (sigma, Re tau, Im tau) with inner product diag(1, 2, 2). Its determinant
// equals |discriminant|.
Mat3 numeric_embedding_gram(const fields::PureCubicField& K);
// 2x2 Gram of the projected trace-zero basis (same basis as gram_perp),
// computed through the embedding; 3 * det equals |discriminant|.
Mat2 numeric_perp_gram(const fields::PureCubicField& K);

struct InjectivityReport {
  std::uint64_t n_fields = 0;
  std::uint64_t n_keys = 0;
  std::uint64_t collisions = 0;
  bool six_twelve_same_discriminant = false;
  bool six_twelve_distinct_shapes = false;
};
// Exact shape keys (type, x, y_cubed) over the given fields; also checks the
// classic pair m = 6, m = 12 (equal discriminants, different shapes).
InjectivityReport verify_injectivity(std::span<const fields::PureCubicField> fields);

}  // namespace cubeshape::shapes
