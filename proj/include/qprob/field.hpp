#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qprob/grid.hpp"

namespace qprob {

/// Real-valued function sampled at the cell centers of a GridDomain.
/// Immutable after construction.
class ScalarField {
 public:
  ScalarField(const GridDomain& domain, std::vector<double> values);

  const GridDomain& domain() const noexcept { return domain_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double value(int32_t ix, int32_t iy) const noexcept {
    return values_[size_t(domain_.cell_index(ix, iy))];
  }

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  double sup_norm() const noexcept;

  /// Ascending copy of all samples, built once on first use and shared
  /// between copies of the field. Safe to call from multiple threads.
  const std::vector<double>& sorted_values() const;

 private:
  struct SortedCache;

  GridDomain domain_;
  std::vector<double> values_;
  double min_;
  double max_;
  std::shared_ptr<SortedCache> cache_;
};

RegionMask superlevel(const ScalarField& field, double t);         // {X > t}
RegionMask sublevel_closed(const ScalarField& field, double t);    // {X <= t}
RegionMask superlevel_closed(const ScalarField& field, double t);  // {X >= t}

ScalarField constant_field(const GridDomain& domain, double value);
ScalarField indicator_field(const RegionMask& mask);

template <class F>
ScalarField map_field(const ScalarField& a, F&& f) {
  std::vector<double> out(a.values().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = f(a.values()[i]);
  return ScalarField(a.domain(), std::move(out));
}

template <class F>
ScalarField zip_fields(const ScalarField& a, const ScalarField& b, F&& f) {
  if (!(a.domain() == b.domain())) {
    fail(ErrorCode::InvalidArgument, "fields live on different grids");
  }
  std::vector<double> out(a.values().size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = f(a.values()[i], b.values()[i]);
  }
  return ScalarField(a.domain(), std::move(out));
}

double max_abs_difference(const ScalarField& a, const ScalarField& b);
bool pointwise_leq(const ScalarField& a, const ScalarField& b);

/// Row-major CSV, one line per row iy, values printed round-trip exact.
std::string field_to_csv(const ScalarField& field);

}  // namespace qprob
