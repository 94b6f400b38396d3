#include "qprob/field.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "qprob/error.hpp"

namespace qprob {

struct ScalarField::SortedCache {
  std::once_flag once;
  std::vector<double> sorted;
};

ScalarField::ScalarField(const GridDomain& domain, std::vector<double> values)
    : domain_(domain),
      values_(std::move(values)),
      cache_(std::make_shared<SortedCache>()) {
  if (int64_t(values_.size()) != domain_.cell_count()) {
    fail(ErrorCode::InvalidArgument,
         "sample count does not match the grid cell count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "field samples must be finite");
    }
  }
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

double ScalarField::sup_norm() const noexcept {
  return std::max(std::fabs(min_), std::fabs(max_));
}

const std::vector<double>& ScalarField::sorted_values() const {
  std::call_once(cache_->once, [this] {
    cache_->sorted = values_;
    std::sort(cache_->sorted.begin(), cache_->sorted.end());
  });
  return cache_->sorted;
}

RegionMask superlevel(const ScalarField& field, double t) {
  RegionMask mask(field.domain());
  const auto& v = field.values();
  for (int64_t i = 0; i < int64_t(v.size()); ++i) {
    if (v[size_t(i)] > t) mask.set(i, true);
  }
  return mask;
}

RegionMask sublevel_closed(const ScalarField& field, double t) {
  return superlevel(field, t).complement();
}

RegionMask superlevel_closed(const ScalarField& field, double t) {
  RegionMask mask(field.domain());
  const auto& v = field.values();
  for (int64_t i = 0; i < int64_t(v.size()); ++i) {
    if (v[size_t(i)] >= t) mask.set(i, true);
  }
  return mask;
}

ScalarField constant_field(const GridDomain& domain, double value) {
  return ScalarField(domain,
                     std::vector<double>(size_t(domain.cell_count()), value));
}

ScalarField indicator_field(const RegionMask& mask) {
  std::vector<double> v(size_t(mask.domain().cell_count()), 0.0);
  for (int64_t i = 0; i < mask.domain().cell_count(); ++i) {
    if (mask.test(i)) v[size_t(i)] = 1.0;
  }
  return ScalarField(mask.domain(), std::move(v));
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  if (!(a.domain() == b.domain())) {
    fail(ErrorCode::InvalidArgument, "fields live on different grids");
  }
  double worst = 0.0;
  for (size_t i = 0; i < a.values().size(); ++i) {
    worst = std::max(worst, std::fabs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

bool pointwise_leq(const ScalarField& a, const ScalarField& b) {
  if (!(a.domain() == b.domain())) {
    fail(ErrorCode::InvalidArgument, "fields live on different grids");
  }
  for (size_t i = 0; i < a.values().size(); ++i) {
    if (a.values()[i] > b.values()[i]) return false;
  }
  return true;
}

std::string field_to_csv(const ScalarField& field) {
  std::ostringstream out;
  out.precision(17);
  const int32_t n = field.domain().resolution();
  for (int32_t iy = 0; iy < n; ++iy) {
    for (int32_t ix = 0; ix < n; ++ix) {
      if (ix) out << ',';
      out << field.value(ix, iy);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qprob
