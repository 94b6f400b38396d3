#include "qprob/representation.hpp"

#include <algorithm>
#include <cmath>

#include "qprob/error.hpp"
#include "qprob/observable.hpp"

namespace qprob {

ScalarField recovery_chain_element(const ScalarField& field, double t,
                                   int64_t i) {
  if (i < 1) {
    fail(ErrorCode::InvalidArgument, "chain index must be positive");
  }
  const double di = double(i);
  const PiecewiseLinear ramp({{t + 1.0 / di, 0.0}, {t + 2.0 / di, 1.0}});
  return map_field(field, [&ramp](double v) { return ramp(v); });
}

namespace {

std::vector<int64_t> chain_schedule(int64_t cap, int64_t stable) {
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

RecoveryResult recover_probability(const QuasiMeasure& measure,
                                   const ScalarField& field, double t,
                                   int64_t steps, double engine_tol) {
  if (steps < 1) {
    fail(ErrorCode::InvalidArgument, "step cap must be positive");
  }
  const RegionMask target = superlevel(field, t);

  RecoveryResult result;
  result.reference = measure.measure_open(target);

  // The ramp equals the indicator of the target once t + 2/i clears the
  // smallest field value above t.
  int64_t stable = 0;
  const std::vector<double>& sorted = field.sorted_values();
  auto next = std::upper_bound(sorted.begin(), sorted.end(), t);
  if (next != sorted.end()) {
    const double gap = *next - t;
    const double raw = std::ceil(2.0 / gap);
    if (raw < double(steps) + 1.0) {
      stable = int64_t(raw);
      while (t + 2.0 / double(stable) > *next && stable <= steps) ++stable;
    }
  }

  result.stabilized = false;
  result.iterations = 0;
  double best = 0.0;
  double previous_slack = 0.0;
  bool have_positive_plateau = false;
  for (const int64_t i : chain_schedule(steps, stable)) {
    const ScalarField element = recovery_chain_element(field, t, i);
    const IntegralResult integral = integrate(measure, element, engine_tol);
    const double value = integral.value;
    ++result.iterations;
    if (!result.chain.empty()) {
      const double previous = result.chain.back().second;
      // Successive estimates may each be off by their bracket width, so a
      // genuine monotonicity breach must exceed the combined slack.
      const double slack =
          previous_slack + integral.tolerance_achieved + 1e-9;
      if (value < previous - slack) {
        fail(ErrorCode::NonMonotoneMeasure,
             "recovery chain decreased at index " + std::to_string(i));
      }
      if (measure.is_two_valued() && value == previous && value > 0.0) {
        have_positive_plateau = true;
      }
    }
    previous_slack = integral.tolerance_achieved;
    result.chain.push_back({i, value});
    best = std::max(best, value);
    if (superlevel_closed(field, t + 2.0 / double(i)) == target) {
      result.stabilized = true;  // the ramp is exactly the indicator now
      break;
    }
    if (have_positive_plateau) {
      result.stabilized = true;
      break;
    }
  }
  result.recovered = best;
  return result;
}

RoundTripReport round_trip(const QuasiMeasure& measure,
                           const std::vector<LevelSet>& corpus, int64_t steps,
                           double engine_tol, double match_tol) {
  RoundTripReport report;
  report.pass = true;
  report.cases.reserve(corpus.size());
  for (const LevelSet& level : corpus) {
    const RecoveryResult recovery = recover_probability(
        measure, level.field, level.threshold, steps, engine_tol);
    RoundTripReport::Case result;
    result.label = level.label;
    result.recovered = recovery.recovered;
    result.reference = *recovery.reference;
    result.pass = measure.is_two_valued()
                      ? result.recovered == result.reference
                      : std::fabs(result.recovered - result.reference) <=
                            match_tol;
    report.pass = report.pass && result.pass;
    report.cases.push_back(std::move(result));
  }
  return report;
}

SandwichReport check_lmon_sandwich(const QuasiMeasure& measure,
                                   const RegionMask& closed_mask,
                                   const ScalarField& x,
                                   const RegionMask& open_mask, double tol) {
  const int64_t cells = x.domain().cell_count();
  if (!(closed_mask.domain() == x.domain()) ||
      !(open_mask.domain() == x.domain())) {
    fail(ErrorCode::InvalidArgument, "masks and field on different grids");
  }
  for (int64_t cell = 0; cell < cells; ++cell) {
    const double v = x.values()[size_t(cell)];
    if (closed_mask.test(cell) && v < 1.0 - 1e-12) {
      fail(ErrorCode::NotSandwiched,
           "field drops below 1 on the closed mask");
    }
    if (!open_mask.test(cell) && v > 1e-12) {
      fail(ErrorCode::NotSandwiched,
           "field is positive outside the open mask");
    }
    if (v < -1e-12 || v > 1.0 + 1e-12) {
      fail(ErrorCode::NotSandwiched, "field leaves [0, 1]");
    }
  }
  SandwichReport report;
  report.closed_value = measure.measure_closed(closed_mask);
  report.open_value = measure.measure_open(open_mask);
  report.integral_value = integrate(measure, x, tol).value;
  report.pass = report.closed_value - tol <= report.integral_value &&
                report.integral_value <= report.open_value + tol;
  return report;
}

}  // namespace qprob
