#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qprob/field.hpp"
#include "qprob/measure.hpp"
#include "qprob/observable.hpp"
#include "qprob/representation.hpp"

namespace qprob {

/// Seeded generator with hand-rolled scaling so streams are identical
/// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  int64_t uniform_int(int64_t lo, int64_t hi);  // inclusive bounds

 private:
  std::mt19937_64 engine_;
};

/// a x^2 + b y^2 + c xy + d x + e y + f with moderate coefficients.
/// Superlevel sets of these are conic pieces, which keeps the generated
/// masks inside the geometry the two-valued measure decides reliably.
Observable random_quadratic(Rng& rng);

/// Sparse polynomial of total degree at most four, coefficients in [-1,1].
Observable random_polynomial(Rng& rng);

/// Nondecreasing piecewise-linear map covering [lo, hi], slope at most 1.2.
PiecewiseLinear random_monotone_pwl(Rng& rng, double lo, double hi);

/// Unconstrained slopes in [-1.2, 1.2] over the same span.
PiecewiseLinear random_pwl(Rng& rng, double lo, double hi);

/// Disjoint mask pairs in rotating shapes (half-planes, center disk plus
/// corner, separated blobs, closed slabs, complementary splits, corner
/// bands, interior annulus plus blob). Same-role pairs keep a wide gap so
/// the union does not merge components across the pair; complementary
/// splits are exact complements on purpose.
std::vector<DisjointPair> random_disjoint_pairs(Rng& rng,
                                                const GridDomain& domain,
                                                int count);

/// Superlevel corpora. Thresholds sit mid-gap between two consecutive
/// distinct field values with a healthy gap, so regularized sequences
/// stabilize at a small index.
std::vector<LevelSet> random_level_sets(Rng& rng, const GridDomain& domain,
                                        int count, bool quadratic_only);

/// X <= Y with sup norms bounded by `scale` (Y picks up a nonnegative bump
/// of at most scale/2 over X).
std::pair<ScalarField, ScalarField> random_dominated_pair(
    Rng& rng, const GridDomain& domain, double scale);

/// Alternates dominated pairs with unrelated pairs.
std::vector<std::pair<ScalarField, ScalarField>> random_field_pairs(
    Rng& rng, const GridDomain& domain, int count);

}  // namespace qprob
