#pragma once

#include <vector>

#include "qprob/field.hpp"
#include "qprob/observable.hpp"

namespace qprob {

/// Separating function for two nonnegative observables with disjoint zero
/// sets: the result is valued in [0,1], takes the exact value 1.0 on the
/// zero set of `y` and the exact value 0.0 on the zero set of `z` (both are
/// plain IEEE quotients z/z and 0/(y), no rounding involved). Validates on
/// the given grid that y >= 0, z >= 0 (NegativeInput) and y + z > 0
/// everywhere (CommonZero).
Observable urysohn(const Observable& y, const Observable& z,
                   const GridDomain& domain);

/// Splits a dominated pair X <= Y into n summands each, so that
///   sum_i parts_x[i] = X,  sum_i parts_y[i] = Y,
///   parts_x[i] <= parts_y[i] + delta / n   pointwise.
/// Both fields are first shifted to be nonnegative; the common range is cut
/// at equispaced thresholds and each summand is the clamped overshoot above
/// its threshold, recentred so the telescoping sums give back X and Y.
struct StaircaseDecomposition {
  std::vector<ScalarField> parts_x;
  std::vector<ScalarField> parts_y;
  int parts;
  double delta;
  double shift;                    // M = max(0, -min X)
  std::vector<double> thresholds;  // n + 1 cut points, 0 = first
};

StaircaseDecomposition staircase(const ScalarField& x, const ScalarField& y,
                                 int parts, double delta);

/// Open regularization of a superlevel set: masks {field > t + 1/i} for
/// i = 1..steps. The masks increase with i and their union over all i is
/// {field > t}.
std::vector<RegionMask> regularized_sequence(const ScalarField& field,
                                             double t, int steps);

}  // namespace qprob
