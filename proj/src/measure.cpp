#include "qprob/measure.hpp"

#include <algorithm>
#include <cmath>

#include "qprob/error.hpp"

namespace qprob {

double QuasiMeasure::measure_of_superlevel(const ScalarField& field,
                                           double t) const {
  return measure_open(superlevel(field, t));
}

double QuasiMeasure::measure_closed(const RegionMask& mask) const {
  return 1.0 - measure_open(mask.complement());
}

AarnesMeasure::AarnesMeasure(const GridDomain& domain)
    : domain_(domain), ring_(boundary_ring(domain)) {}

double AarnesMeasure::measure_open(const RegionMask& mask) const {
  if (!(mask.domain() == domain_)) {
    fail(ErrorCode::InvalidArgument, "mask belongs to a different grid");
  }
  if (mask.none()) return 0.0;
  const ComponentLabeling labeling = label_components(mask, Adjacency::Eight);
  for (const ComponentInfo& component : labeling.components) {
    if (component.contains_marker_cell && component.touches_boundary_ring) {
      return 1.0;
    }
    if (component.contains_full_boundary_ring) {
      return 1.0;
    }
  }
  return 0.0;
}

double UniformMeasure::measure_open(const RegionMask& mask) const {
  if (!(mask.domain() == domain_)) {
    fail(ErrorCode::InvalidArgument, "mask belongs to a different grid");
  }
  return double(mask.popcount()) / double(domain_.cell_count());
}

double UniformMeasure::measure_of_superlevel(const ScalarField& field,
                                             double t) const {
  if (!(field.domain() == domain_)) {
    fail(ErrorCode::InvalidArgument, "field belongs to a different grid");
  }
  const std::vector<double>& sorted = field.sorted_values();
  const auto above = sorted.end() -
                     std::upper_bound(sorted.begin(), sorted.end(), t);
  return double(above) / double(domain_.cell_count());
}

std::unique_ptr<QuasiMeasure> make_measure(const std::string& name,
                                           const GridDomain& domain) {
  if (name == "aarnes") return std::make_unique<AarnesMeasure>(domain);
  if (name == "uniform") return std::make_unique<UniformMeasure>(domain);
  fail(ErrorCode::InvalidArgument,
       "unknown measure \"" + name + "\" (expected aarnes or uniform)");
}

double measure_by_role(const QuasiMeasure& measure, const RegionMask& mask,
                       MaskRole role) {
  return role == MaskRole::Open ? measure.measure_open(mask)
                                : measure.measure_closed(mask);
}

AdditivityReport check_additivity(const QuasiMeasure& measure,
                                  const std::vector<DisjointPair>& pairs,
                                  double tol) {
  AdditivityReport report;
  report.pass = true;
  report.cases.reserve(pairs.size());
  for (const DisjointPair& pair : pairs) {
    if (pair.a.intersects(pair.b)) {
      fail(ErrorCode::NotDisjoint, "pair \"" + pair.label + "\" overlaps");
    }
    AdditivityReport::Case result;
    result.label = pair.label;
    result.value_a = measure_by_role(measure, pair.a, pair.role_a);
    result.value_b = measure_by_role(measure, pair.b, pair.role_b);
    result.value_union =
        measure_by_role(measure, pair.a | pair.b, pair.role_union);
    result.gap =
        std::fabs(result.value_union - result.value_a - result.value_b);
    result.pass = result.gap <= tol;
    report.pass = report.pass && result.pass;
    report.cases.push_back(std::move(result));
  }
  return report;
}

ConvergenceReport check_monotone_convergence(
    const QuasiMeasure& measure, const std::vector<RegionMask>& chain,
    double tol) {
  if (chain.empty()) {
    fail(ErrorCode::InvalidArgument, "empty convergence chain");
  }
  for (size_t i = 1; i < chain.size(); ++i) {
    if (!chain[i - 1].is_subset_of(chain[i])) {
      fail(ErrorCode::NotIncreasing,
           "chain element " + std::to_string(i) +
               " does not contain its predecessor");
    }
  }
  ConvergenceReport report;
  report.values.reserve(chain.size());
  for (const RegionMask& mask : chain) {
    report.values.push_back(measure.measure_open(mask));
  }
  report.monotone = true;
  for (size_t i = 1; i < report.values.size(); ++i) {
    if (report.values[i] < report.values[i - 1] - tol) {
      report.monotone = false;
    }
  }
  report.limit_value = report.values.back();
  const double sup =
      *std::max_element(report.values.begin(), report.values.end());
  report.pass = report.monotone && std::fabs(sup - report.limit_value) <= tol;
  return report;
}

namespace {

// 1..8, then powers of two up to the cap, the cap itself, and the
// stabilization index when it fits. E/P values along regularization chains
// are nondecreasing, so evaluating this thinned set preserves the sup.
std::vector<int64_t> regularization_schedule(int64_t cap, int64_t stable) {
  std::vector<int64_t> schedule;
  for (int64_t i = 1; i <= std::min<int64_t>(8, cap); ++i) {
    schedule.push_back(i);
  }
  for (int64_t i = 16; i < cap; i *= 2) schedule.push_back(i);
  if (cap > 8) schedule.push_back(cap);
  if (stable > 0 && stable <= cap) schedule.push_back(stable);
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()),
                 schedule.end());
  return schedule;
}

}  // namespace

RegularityReport check_regularity(const QuasiMeasure& measure,
                                  const ScalarField& field, double t,
                                  int64_t max_index, double tol) {
  if (max_index < 1) {
    fail(ErrorCode::InvalidArgument, "regularization index cap must be >= 1");
  }
  const RegionMask open_mask = superlevel(field, t);

  // First field value above t; once t + 1/i drops at or below it, the
  // closed mask {field >= t + 1/i} coincides with the open target.
  int64_t stable = 0;
  const std::vector<double>& sorted = field.sorted_values();
  auto next = std::upper_bound(sorted.begin(), sorted.end(), t);
  if (next != sorted.end()) {
    const double gap = *next - t;
    double raw = std::ceil(1.0 / gap);
    if (raw < double(max_index) + 1.0) {
      stable = int64_t(raw);
      while (t + 1.0 / double(stable) > *next && stable <= max_index) {
        ++stable;
      }
    }
  }

  RegularityReport report;
  report.schedule = regularization_schedule(max_index, stable);
  report.open_value = measure.measure_open(open_mask);
  report.closed_values.reserve(report.schedule.size());
  size_t used = 0;
  for (const int64_t i : report.schedule) {
    const RegionMask closed_mask =
        superlevel_closed(field, t + 1.0 / double(i));
    report.closed_values.push_back(measure.measure_closed(closed_mask));
    ++used;
    if (closed_mask == open_mask) break;  // sup attained at grid scale
  }
  report.schedule.resize(used);
  report.sup_closed =
      report.closed_values.empty()
          ? 0.0
          : *std::max_element(report.closed_values.begin(),
                              report.closed_values.end());
  report.pass = std::fabs(report.sup_closed - report.open_value) <= tol;
  return report;
}

}  // namespace qprob
