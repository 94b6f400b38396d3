#include "qprob/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qprob/error.hpp"

namespace qprob {
namespace {

ScalarField eval_on(const Observable& obs, const GridDomain& domain) {
  return evaluate(obs, domain);
}

RegionMask mask_where(const GridDomain& domain,
                      const std::function<bool(double, double)>& keep) {
  RegionMask mask(domain);
  for (int32_t iy = 0; iy < domain.resolution(); ++iy) {
    for (int32_t ix = 0; ix < domain.resolution(); ++ix) {
      if (keep(domain.cell_center_x(ix), domain.cell_center_y(iy))) {
        mask.set(ix, iy, true);
      }
    }
  }
  return mask;
}

/// True when some cell of `a` is within one step (diagonals included) of a
/// cell of `b`. Used to reject pairs whose union would merge components.
bool masks_touch(const RegionMask& a, const RegionMask& b) {
  const GridDomain& domain = a.domain();
  const int32_t n = domain.resolution();
  for (int32_t iy = 0; iy < n; ++iy) {
    for (int32_t ix = 0; ix < n; ++ix) {
      if (!a.test(ix, iy)) continue;
      for (int32_t dy = -1; dy <= 1; ++dy) {
        for (int32_t dx = -1; dx <= 1; ++dx) {
          const int32_t jx = ix + dx;
          const int32_t jy = iy + dy;
          if (jx < 0 || jx >= n || jy < 0 || jy >= n) continue;
          if (b.test(jx, jy)) return true;
        }
      }
    }
  }
  return false;
}

/// Midpoint of the first comfortable gap in the sorted sample values at or
/// after the requested quantile. A comfortable gap keeps the regularized
/// sequences short: the index where {f > t + 1/i} stops moving is about
/// 2 / (next value - t).
double mid_gap_threshold(const ScalarField& field, double quantile) {
  const std::vector<double>& sorted = field.sorted_values();
  const double range = sorted.back() - sorted.front();
  const double min_gap = 1e-5 * (range + 1.0);
  const auto count = static_cast<int64_t>(sorted.size());
  int64_t start = static_cast<int64_t>(quantile * static_cast<double>(count - 1));
  start = std::clamp<int64_t>(start, 0, count - 2);
  for (int64_t k = start; k + 1 < count; ++k) {
    if (sorted[k + 1] - sorted[k] >= min_gap) {
      return sorted[k] + (sorted[k + 1] - sorted[k]) / 2.0;
    }
  }
  for (int64_t k = start; k > 0; --k) {
    if (sorted[k] - sorted[k - 1] >= min_gap) {
      return sorted[k - 1] + (sorted[k] - sorted[k - 1]) / 2.0;
    }
  }
  fail(ErrorCode::InvalidArgument,
       "field values are too tightly packed to place a threshold");
}

DisjointPair make_pair_kind(Rng& rng, const GridDomain& domain, int kind,
                            int index) {
  const std::string tag = std::to_string(index);
  switch (kind) {
    case 0: {
      const double c1 = rng.uniform(-0.8, -0.15);
      const double c2 = rng.uniform(0.15, 0.8);
      return {mask_where(domain, [c1](double x, double) { return x < c1; }),
              mask_where(domain, [c2](double x, double) { return x > c2; }),
              MaskRole::Open, MaskRole::Open, MaskRole::Open,
              "half_planes_" + tag};
    }
    case 1: {
      // Disk big enough to reach the boundary ring, plus a corner sliver
      // strictly outside it. The margin keeps the two from touching.
      const double c = rng.uniform(1.78, 1.9);
      const double rmax = std::min(1.2, c / std::sqrt(2.0) - 0.05);
      const double r = rng.uniform(1.05, rmax);
      const double r2 = r * r;
      return {mask_where(domain,
                         [r2](double x, double y) { return x * x + y * y < r2; }),
              mask_where(domain, [c](double x, double y) { return x + y > c; }),
              MaskRole::Open, MaskRole::Open, MaskRole::Open,
              "disk_and_corner_" + tag};
    }
    case 2: {
      const double ax = -0.5 + rng.uniform(-0.1, 0.1);
      const double ay = -0.5 + rng.uniform(-0.1, 0.1);
      const double bx = 0.5 + rng.uniform(-0.1, 0.1);
      const double by = 0.5 + rng.uniform(-0.1, 0.1);
      const double ra = rng.uniform(0.15, 0.3);
      const double rb = rng.uniform(0.15, 0.3);
      return {mask_where(domain,
                         [=](double x, double y) {
                           return (x - ax) * (x - ax) + (y - ay) * (y - ay) <
                                  ra * ra;
                         }),
              mask_where(domain,
                         [=](double x, double y) {
                           return (x - bx) * (x - bx) + (y - by) * (y - by) <
                                  rb * rb;
                         }),
              MaskRole::Open, MaskRole::Open, MaskRole::Open,
              "two_blobs_" + tag};
    }
    case 3: {
      const double c1 = rng.uniform(-0.8, -0.15);
      const double c2 = rng.uniform(0.15, 0.8);
      return {mask_where(domain, [c1](double x, double) { return x <= c1; }),
              mask_where(domain, [c2](double x, double) { return x >= c2; }),
              MaskRole::Closed, MaskRole::Closed, MaskRole::Closed,
              "slabs_" + tag};
    }
    case 4: {
      // Exact complement split of a conic superlevel set. The open side
      // and its closed complement partition the square, so additivity here
      // exercises the mixed identity rather than geometry.
      const ScalarField field = eval_on(random_quadratic(rng), domain);
      const double t = mid_gap_threshold(field, rng.uniform(0.3, 0.7));
      RegionMask open_side = superlevel(field, t);
      RegionMask closed_side = open_side.complement();
      return {std::move(open_side), std::move(closed_side), MaskRole::Open,
              MaskRole::Closed, MaskRole::Closed, "complement_split_" + tag};
    }
    case 5: {
      const double c = rng.uniform(1.7, 1.85);
      return {mask_where(domain, [c](double x, double y) { return x + y >= c; }),
              mask_where(domain,
                         [c](double x, double y) { return x + y <= -c; }),
              MaskRole::Closed, MaskRole::Closed, MaskRole::Closed,
              "corner_bands_" + tag};
    }
    default: {
      const double r0 = rng.uniform(0.2, 0.3);
      const double r1 = rng.uniform(0.42, 0.5);
      const double r2 = rng.uniform(0.68, 0.78);
      return {mask_where(domain,
                         [=](double x, double y) {
                           const double q = x * x + y * y;
                           return r1 * r1 < q && q < r2 * r2;
                         }),
              mask_where(domain,
                         [=](double x, double y) {
                           return x * x + y * y < r0 * r0;
                         }),
              MaskRole::Open, MaskRole::Open, MaskRole::Open,
              "annulus_and_core_" + tag};
    }
  }
}

}  // namespace

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  if (hi < lo) fail(ErrorCode::InvalidArgument, "empty integer range");
  const auto span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(engine_() % span);
}

Observable random_quadratic(Rng& rng) {
  const double a = rng.uniform(-1.5, 1.5);
  const double b = rng.uniform(-1.5, 1.5);
  const double c = rng.uniform(-1.0, 1.0);
  const double d = rng.uniform(-1.0, 1.0);
  const double e = rng.uniform(-1.0, 1.0);
  const double f = rng.uniform(-0.5, 0.5);
  const Observable x = coord_x();
  const Observable y = coord_y();
  return constant(a) * pow_of(x, 2) + constant(b) * pow_of(y, 2) +
         constant(c) * x * y + constant(d) * x + constant(e) * y + constant(f);
}

Observable random_polynomial(Rng& rng) {
  const int terms = static_cast<int>(rng.uniform_int(3, 6));
  Observable sum = constant(rng.uniform(-1.0, 1.0));
  for (int k = 0; k < terms; ++k) {
    const int i = static_cast<int>(rng.uniform_int(0, 4));
    const int j = static_cast<int>(rng.uniform_int(0, 4 - i));
    Observable term = constant(rng.uniform(-1.0, 1.0));
    if (i > 0) term = term * pow_of(coord_x(), i);
    if (j > 0) term = term * pow_of(coord_y(), j);
    sum = sum + term;
  }
  return sum;
}

PiecewiseLinear random_monotone_pwl(Rng& rng, double lo, double hi) {
  if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "empty abscissa span");
  const int pieces = static_cast<int>(rng.uniform_int(2, 4));
  std::vector<double> widths(pieces);
  double total = 0.0;
  for (double& w : widths) {
    w = rng.uniform(0.5, 1.5);
    total += w;
  }
  std::vector<PiecewiseLinear::Breakpoint> points;
  double t = lo;
  double v = rng.uniform(-0.5, 0.5);
  points.push_back({t, v});
  for (int k = 0; k < pieces; ++k) {
    const double dt = (hi - lo) * widths[k] / total;
    t = (k + 1 == pieces) ? hi : t + dt;
    v += rng.uniform(0.0, 1.2) * dt;
    points.push_back({t, v});
  }
  return PiecewiseLinear(points);
}

PiecewiseLinear random_pwl(Rng& rng, double lo, double hi) {
  if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "empty abscissa span");
  const int pieces = static_cast<int>(rng.uniform_int(2, 4));
  std::vector<double> widths(pieces);
  double total = 0.0;
  for (double& w : widths) {
    w = rng.uniform(0.5, 1.5);
    total += w;
  }
  std::vector<PiecewiseLinear::Breakpoint> points;
  double t = lo;
  double v = rng.uniform(-0.5, 0.5);
  points.push_back({t, v});
  for (int k = 0; k < pieces; ++k) {
    const double dt = (hi - lo) * widths[k] / total;
    t = (k + 1 == pieces) ? hi : t + dt;
    v += rng.uniform(-1.2, 1.2) * dt;
    points.push_back({t, v});
  }
  return PiecewiseLinear(points);
}

std::vector<DisjointPair> random_disjoint_pairs(Rng& rng,
                                                const GridDomain& domain,
                                                int count) {
  std::vector<DisjointPair> pairs;
  pairs.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int kind = i % 7;
    DisjointPair pair = make_pair_kind(rng, domain, kind, i);
    for (int attempt = 0; attempt < 32; ++attempt) {
      const bool overlap = pair.a.intersects(pair.b);
      // Complement splits touch by construction; everything else must keep
      // a visible gap so the union's component structure is the union of
      // the parts' structures.
      const bool touching = kind != 4 && masks_touch(pair.a, pair.b);
      if (!overlap && !touching && pair.a.any() && pair.b.any()) break;
      pair = make_pair_kind(rng, domain, kind, i);
    }
    if (pair.a.intersects(pair.b)) {
      fail(ErrorCode::InvalidArgument,
           "failed to draw a disjoint pair; grid too coarse for the shapes");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<LevelSet> random_level_sets(Rng& rng, const GridDomain& domain,
                                        int count, bool quadratic_only) {
  std::vector<LevelSet> sets;
  sets.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Observable obs =
        quadratic_only ? random_quadratic(rng) : random_polynomial(rng);
    ScalarField field = eval_on(obs, domain);
    const double t = mid_gap_threshold(field, rng.uniform(0.15, 0.85));
    sets.push_back({std::move(field), t, "level_set_" + std::to_string(i)});
  }
  return sets;
}

std::pair<ScalarField, ScalarField> random_dominated_pair(
    Rng& rng, const GridDomain& domain, double scale) {
  const ScalarField base = eval_on(random_polynomial(rng), domain);
  const ScalarField bump = eval_on(random_polynomial(rng), domain);
  const double base_norm =
      std::max({1.0, std::fabs(base.min()), std::fabs(base.max())});
  const double bump_norm =
      std::max({1.0, std::fabs(bump.min()), std::fabs(bump.max())});
  const double base_gain = 0.5 * scale / base_norm;
  const double bump_gain = 0.5 * scale / bump_norm;
  ScalarField x =
      map_field(base, [base_gain](double v) { return base_gain * v; });
  ScalarField y = zip_fields(x, bump, [bump_gain](double xv, double bv) {
    return xv + bump_gain * std::fabs(bv);
  });
  return {std::move(x), std::move(y)};
}

std::vector<std::pair<ScalarField, ScalarField>> random_field_pairs(
    Rng& rng, const GridDomain& domain, int count) {
  std::vector<std::pair<ScalarField, ScalarField>> pairs;
  pairs.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      pairs.push_back(random_dominated_pair(rng, domain, 1.0));
    } else {
      pairs.emplace_back(eval_on(random_polynomial(rng), domain),
                         eval_on(random_polynomial(rng), domain));
    }
  }
  return pairs;
}

}  // namespace qprob
