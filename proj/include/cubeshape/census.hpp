#pragma once

#include <cstdint>
#include <vector>

#include "cubeshape/arith.hpp"
#include "cubeshape/errors.hpp"
#include "cubeshape/fields.hpp"
#include "cubeshape/rational.hpp"

namespace cubeshape::census {

// Couple censuses live on the symmetric region ab <= N inside the cone
// 1/R <= a/b <= R (both orientations, diagonal included when it qualifies);
// field counts live on a > b only, with the type-dependent discriminant
// bound folded into an exact hyperbola ab <= P.

struct CoupleCount {
  std::int64_t N = 0;
  Rational R;
  std::int64_t total = 0;
  std::int64_t type_i = 0;
  std::int64_t type_ii = 0;
};
CoupleCount count_couples(std::int64_t N, const Rational& R, unsigned threads = 1);

// The four hyperbola/cone pieces whose alternating sum r1 - r2 + r3 - r4
// equals the cone count: (i) a <= sqrt(NR), b <= N/a; (ii) a <= sqrt(N/R),
// b <= N/a; (iii) a <= sqrt(N/R), b <= Ra; (iv) a <= sqrt(NR), b < a/R.
// Region (iv) is strict so the identity is exact on boundaries.
struct RegionCounts {
  std::int64_t r1 = 0, r2 = 0, r3 = 0, r4 = 0;
  std::int64_t alternating_sum() const { return r1 - r2 + r3 - r4; }
};
RegionCounts count_couples_by_regions(std::int64_t N, const Rational& R, unsigned threads = 1);

enum class Edge { closed, open };
struct ConeCount {
  std::int64_t total = 0;
  std::int64_t type_ii = 0;
  std::int64_t type_i() const { return total - type_ii; }
};
// Couple count with an explicit cone-boundary convention on both edges;
// count_couples is the closed case.
ConeCount count_cone(std::int64_t N, const Rational& R, Edge edge, unsigned threads = 1);

struct FieldCount {
  std::int64_t X = 0;
  Rational R1, R2;
  std::int64_t n_i = 0;
  std::int64_t n_ii = 0;
  std::int64_t total() const { return n_i + n_ii; }
};
// Fields with |discriminant| <= X and ratio strictly inside (R1, R2),
// counted two ways: direct enumeration, and the exact cone identity
// 2 N_t = S_t^open(P_t, R2) - S_t^closed(P_t, R1). Disagreement throws
// consistency_error.
FieldCount count_fields(std::int64_t X, const Rational& R1, const Rational& R2,
                        unsigned threads = 1);

// Largest P >= 0 with mult * P^2 <= X.
std::int64_t hyperbola_bound(std::int64_t X, std::int64_t mult);

// Shape-measure normalizers: C_I = (2/15) sqrt3 C, C_II = (1/10) sqrt3 C.
// The rational multiplier is kept exact so C_I / C_II = 4/3 holds by
// construction.
Rational normalizer_multiplier(fields::FieldType type);
double normalizer(fields::FieldType type, double C_value);

// Index i such that edges[i] <= r^{1/3} < edges[i+1], or -1. Each edge is
// read as the exact dyadic rational u/v of its double; the comparison
// r >= (u/v)^3 runs in integers whenever |u|, v <= 2^21 (all integral and
// small-fraction edges), and through long-double cbrt otherwise.
int y_bin_index(const Rational& ratio, const std::vector<double>& edges);

struct EmpiricalMeasure {
  fields::FieldType type = fields::FieldType::I;
  std::int64_t X = 0;
  std::vector<double> edges;
  std::vector<std::int64_t> counts;  // per bin
  std::vector<double> masses;        // counts / (normalizer * sqrt X)
  double normalizer_value = 0;
};
// Distribution of r^{1/3} over fields of one type with |disc| <= X, binned
// by edges (y-coordinates >= 1, strictly increasing). The limit mass of
// [e, e') is log(e'/e).
EmpiricalMeasure empirical_measure(fields::FieldType type, std::int64_t X,
                                   const std::vector<double>& edges,
                                   const arith::ConstantEstimate& C, unsigned threads = 1);

struct ConvergenceRow {
  std::int64_t X = 0;
  double mass = 0;
  double deviation = 0;  // |mass - log(R2/R1)|
};
// Mass of one y-bin [R1, R2) across increasing X.
std::vector<ConvergenceRow> convergence_table(fields::FieldType type, double R1, double R2,
                                              const std::vector<std::int64_t>& X_list,
                                              const arith::ConstantEstimate& C,
                                              unsigned threads = 1);

}  // namespace cubeshape::census
