#include "qprob/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "qprob/error.hpp"

namespace qprob {

Observable urysohn(const Observable& y, const Observable& z,
                   const GridDomain& domain) {
  const ScalarField fy = evaluate(y, domain);
  const ScalarField fz = evaluate(z, domain);
  if (fy.min() < 0.0 || fz.min() < 0.0) {
    fail(ErrorCode::NegativeInput,
         "separating inputs must be nonnegative on the grid");
  }
  for (size_t i = 0; i < fy.values().size(); ++i) {
    if (fy.values()[i] + fz.values()[i] <= 0.0) {
      fail(ErrorCode::CommonZero,
           "separating inputs vanish at a common grid cell");
    }
  }
  return urysohn_ratio(z, y);
}

StaircaseDecomposition staircase(const ScalarField& x, const ScalarField& y,
                                 int parts, double delta) {
  if (parts < 1) {
    fail(ErrorCode::InvalidArgument, "part count must be positive");
  }
  if (!(delta > 0.0)) {
    fail(ErrorCode::InvalidArgument, "delta must be positive");
  }
  if (!pointwise_leq(x, y)) {
    fail(ErrorCode::NotDominated, "staircase needs x <= y pointwise");
  }

  const double shift = std::max(0.0, -x.min());
  const ScalarField xs = map_field(x, [&](double v) { return v + shift; });
  const ScalarField ys =
      map_field(y, [&](double v) { return v + shift + delta; });
  const double beta = ys.max();
  const double width = beta / parts;
  if (!(width < delta)) {
    fail(ErrorCode::PartitionTooCoarse,
         "need beta / parts < delta; increase the part count");
  }

  StaircaseDecomposition out;
  out.parts = parts;
  out.delta = delta;
  out.shift = shift;
  out.thresholds.resize(size_t(parts) + 1);
  for (int i = 0; i <= parts; ++i) {
    out.thresholds[size_t(i)] = beta * double(i) / double(parts);
  }

  out.parts_x.reserve(size_t(parts));
  out.parts_y.reserve(size_t(parts));
  const double slab_x = shift / parts;
  const double slab_y = (shift + delta) / parts;
  for (int i = 1; i <= parts; ++i) {
    const double lo = out.thresholds[size_t(i) - 1];
    const double span = out.thresholds[size_t(i)] - lo;
    auto clip = [&](double v) { return std::clamp(v - lo, 0.0, span); };
    out.parts_x.push_back(
        map_field(xs, [&](double v) { return clip(v) - slab_x; }));
    out.parts_y.push_back(
        map_field(ys, [&](double v) { return clip(v) - slab_y; }));
  }
  return out;
}

std::vector<RegionMask> regularized_sequence(const ScalarField& field,
                                             double t, int steps) {
  if (steps < 1) {
    fail(ErrorCode::InvalidArgument, "step count must be positive");
  }
  std::vector<RegionMask> out;
  out.reserve(size_t(steps));
  for (int i = 1; i <= steps; ++i) {
    out.push_back(superlevel(field, t + 1.0 / double(i)));
  }
  return out;
}

}  // namespace qprob
