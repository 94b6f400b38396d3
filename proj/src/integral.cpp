#include "qprob/integral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "qprob/error.hpp"

namespace qprob {

StepCdf::StepCdf(std::vector<std::pair<double, double>> samples)
    : samples_(std::move(samples)) {
  for (size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i - 1].first < samples_[i].first)) {
      fail(ErrorCode::InvalidArgument,
           "cdf thresholds must be strictly increasing");
    }
  }
}

double StepCdf::operator()(double t) const noexcept {
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double lhs, const std::pair<double, double>& rhs) {
        return lhs < rhs.first;
      });
  if (it == samples_.begin()) return 0.0;
  return (it - 1)->second;
}

const char* method_name(IntegrationMethod method) {
  return method == IntegrationMethod::Bisection ? "bisection" : "riemann";
}

namespace {

// Memoized g(t) = P{field > t} with a monotonicity watchdog: any increase
// beyond 1e-12 between evaluated thresholds means the measure is broken.
class SuperlevelProbe {
 public:
  SuperlevelProbe(const QuasiMeasure& measure, const ScalarField& field)
      : measure_(measure), field_(field) {}

  double operator()(double t) {
    auto it = cache_.lower_bound(t);
    if (it != cache_.end() && it->first == t) return it->second;
    const double value = measure_.measure_of_superlevel(field_, t);
    ++evaluations_;
    if (it != cache_.end() && value < it->second - 1e-12) {
      fail(ErrorCode::NonMonotoneMeasure,
           "P{field > t} increased with t near t=" + std::to_string(t));
    }
    if (it != cache_.begin() && value > std::prev(it)->second + 1e-12) {
      fail(ErrorCode::NonMonotoneMeasure,
           "P{field > t} increased with t near t=" + std::to_string(t));
    }
    cache_.emplace_hint(it, t, value);
    return value;
  }

  int64_t evaluations() const noexcept { return evaluations_; }

 private:
  const QuasiMeasure& measure_;
  const ScalarField& field_;
  std::map<double, double> cache_;
  int64_t evaluations_ = 0;
};

// Splits any interval whose F-increment exceeds 0.05 until increments are
// small or the interval is at the resolution floor. Returns the extra
// thresholds discovered.
std::vector<double> refine_jumps(SuperlevelProbe& probe,
                                 const std::vector<double>& points,
                                 double resolution) {
  std::vector<std::pair<double, double>> pending;
  for (size_t k = 0; k + 1 < points.size(); ++k) {
    pending.push_back({points[k], points[k + 1]});
  }
  std::vector<double> extra;
  int64_t guard = 0;
  while (!pending.empty() && guard < 200000) {
    auto [a, b] = pending.back();
    pending.pop_back();
    ++guard;
    if (b - a <= resolution) continue;
    if (probe(a) - probe(b) <= 0.05) continue;  // F(b)-F(a) = g(a)-g(b)
    const double mid = 0.5 * (a + b);
    extra.push_back(mid);
    pending.push_back({a, mid});
    pending.push_back({mid, b});
  }
  return extra;
}

void require_same_domain(const QuasiMeasure& measure,
                         const ScalarField& field) {
  if (!(measure.domain() == field.domain())) {
    fail(ErrorCode::InvalidArgument,
         "field and measure live on different grids");
  }
}

}  // namespace

StepCdf cdf(const QuasiMeasure& measure, const ScalarField& field,
            std::vector<double> ts, int base_samples) {
  require_same_domain(measure, field);
  if (base_samples < 2) {
    fail(ErrorCode::InvalidArgument, "need at least two cdf base samples");
  }
  SuperlevelProbe probe(measure, field);
  const double lo = field.min();
  const double hi = field.max();
  std::vector<double> points;
  if (!ts.empty()) {
    for (size_t i = 1; i < ts.size(); ++i) {
      if (!(ts[i - 1] <= ts[i])) {
        fail(ErrorCode::InvalidArgument, "cdf thresholds must be sorted");
      }
    }
    points = std::move(ts);
  } else if (lo == hi) {
    points = {lo};
  } else {
    points.reserve(size_t(base_samples));
    for (int k = 0; k < base_samples; ++k) {
      points.push_back(lo + (hi - lo) * double(k) / double(base_samples - 1));
    }
    const std::vector<double> extra =
        refine_jumps(probe, points, (hi - lo) * 1e-9);
    points.insert(points.end(), extra.begin(), extra.end());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<std::pair<double, double>> samples;
  samples.reserve(points.size());
  for (const double t : points) {
    samples.push_back({t, 1.0 - probe(t)});
  }
  return StepCdf(std::move(samples));
}

IntegralResult integrate(const QuasiMeasure& measure, const ScalarField& field,
                         double tol) {
  require_same_domain(measure, field);
  if (!(tol > 0.0)) {
    fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  const double lo = field.min();
  const double hi = field.max();
  IntegralResult out;
  out.method = measure.is_two_valued() ? IntegrationMethod::Bisection
                                       : IntegrationMethod::Riemann;
  if (lo == hi) {
    out.value = lo;
    out.evaluations = 0;
    out.tolerance_achieved = 0.0;
    return out;
  }
  SuperlevelProbe probe(measure, field);

  if (out.method == IntegrationMethod::Bisection) {
    // g is a nonincreasing 0/1 step that can only change at field values,
    // so the flip threshold is a field value and equals the integral; a
    // binary search over the distinct values lands on it exactly.
    std::vector<double> values = field.sorted_values();
    values.erase(std::unique(values.begin(), values.end()), values.end());
    auto is_one = [&](double t) {
      const double v = probe(t);
      if (std::fabs(v - 1.0) <= 1e-12) return true;
      if (std::fabs(v) <= 1e-12) return false;
      fail(ErrorCode::InvalidArgument,
           "measure declared two-valued returned " + std::to_string(v));
    };
    if (!is_one(values.front())) {
      out.value = values.front();
    } else {
      size_t low = 0;
      size_t high = values.size() - 1;
      if (is_one(values[high])) {
        fail(ErrorCode::NonMonotoneMeasure,
             "P{field > max} must vanish but did not");
      }
      while (high - low > 1) {
        const size_t mid = low + (high - low) / 2;
        (is_one(values[mid]) ? low : high) = mid;
      }
      out.value = values[high];
    }
    out.evaluations = probe.evaluations();
    out.tolerance_achieved = 0.0;
    return out;
  }

  // Adaptive interval halving. g is nonincreasing, so every segment [a,b]
  // brackets its own integral between g(b)(b-a) and g(a)(b-a); we split the
  // segment with the widest bracket until the global bracket is tight.
  struct Segment {
    double a, b, ga, gb;
    int depth;
  };
  auto gap = [](const Segment& s) { return (s.ga - s.gb) * (s.b - s.a); };
  auto lower_priority = [&gap](const Segment& l, const Segment& r) {
    const double gl = gap(l);
    const double gr = gap(r);
    if (gl != gr) return gl < gr;
    return l.a > r.a;
  };
  std::priority_queue<Segment, std::vector<Segment>, decltype(lower_priority)>
      worst(lower_priority);
  Segment root{lo, hi, probe(lo), probe(hi), 0};
  double lower = root.gb * (hi - lo);
  double upper = root.ga * (hi - lo);
  worst.push(root);
  int64_t rounds = 0;
  while ((upper - lower) * 0.5 > tol) {
    const Segment s = worst.top();
    worst.pop();
    if (s.depth >= 40 || ++rounds > 200000) {
      fail(ErrorCode::ToleranceNotReached,
           "adaptive refinement hit its depth limit before reaching " +
               std::to_string(tol));
    }
    const double mid = 0.5 * (s.a + s.b);
    const double gm = probe(mid);
    lower += (gm - s.gb) * (mid - s.a);
    upper += (gm - s.ga) * (s.b - mid);
    worst.push({s.a, mid, s.ga, gm, s.depth + 1});
    worst.push({mid, s.b, gm, s.gb, s.depth + 1});
  }
  out.value = lo + 0.5 * (lower + upper);
  out.evaluations = probe.evaluations();
  out.tolerance_achieved = 0.5 * (upper - lower);
  return out;
}

double expectation_of_composition(const QuasiMeasure& measure,
                                  const ScalarField& field,
                                  const PiecewiseLinear& phi,
                                  int base_samples) {
  require_same_domain(measure, field);
  if (base_samples < 2) {
    fail(ErrorCode::InvalidArgument, "need at least two base samples");
  }
  const double lo = field.min();
  const double hi = field.max();
  if (lo == hi) return phi(lo);

  SuperlevelProbe probe(measure, field);
  std::vector<double> points;
  points.reserve(size_t(base_samples) + phi.breakpoints().size());
  for (int k = 0; k < base_samples; ++k) {
    points.push_back(lo + (hi - lo) * double(k) / double(base_samples - 1));
  }
  for (const auto& bp : phi.breakpoints()) {
    if (bp.t > lo && bp.t < hi) points.push_back(bp.t);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::vector<double> extra =
      refine_jumps(probe, points, (hi - lo) * 1e-9);
  points.insert(points.end(), extra.begin(), extra.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Mass at the minimum, then midpoint-weighted CDF increments.
  double total = phi(points.front()) * (1.0 - probe(points.front()));
  for (size_t k = 1; k < points.size(); ++k) {
    const double mass = probe(points[k - 1]) - probe(points[k]);
    total += phi(0.5 * (points[k - 1] + points[k])) * mass;
  }
  return total;
}

IntegralConvergenceReport check_monotone_convergence_of_integral(
    const QuasiMeasure& measure, const std::vector<ScalarField>& sequence,
    const ScalarField& limit, double tol) {
  if (sequence.empty()) {
    fail(ErrorCode::InvalidArgument, "empty field sequence");
  }
  for (size_t i = 1; i < sequence.size(); ++i) {
    if (!pointwise_leq(sequence[i - 1], sequence[i])) {
      fail(ErrorCode::NotMonotone,
           "field sequence decreases at step " + std::to_string(i));
    }
  }
  if (!pointwise_leq(sequence.back(), limit)) {
    fail(ErrorCode::NotMonotone, "field sequence exceeds its limit");
  }
  const double engine_tol = tol / 4.0;
  IntegralConvergenceReport report;
  report.values.reserve(sequence.size());
  for (const ScalarField& x : sequence) {
    report.values.push_back(integrate(measure, x, engine_tol).value);
  }
  report.limit_value = integrate(measure, limit, engine_tol).value;
  report.monotone = true;
  for (size_t i = 1; i < report.values.size(); ++i) {
    if (report.values[i] < report.values[i - 1] - tol) {
      report.monotone = false;
    }
  }
  report.pass = report.monotone &&
                std::fabs(report.values.back() - report.limit_value) <= tol;
  return report;
}

LipschitzReport check_lipschitz(
    const QuasiMeasure& measure,
    const std::vector<std::pair<ScalarField, ScalarField>>& pairs,
    double tol) {
  LipschitzReport report;
  report.pass = true;
  report.cases.reserve(pairs.size());
  int index = 0;
  for (const auto& [x, y] : pairs) {
    LipschitzReport::Case result;
    result.label = "pair " + std::to_string(index++);
    result.value_x = integrate(measure, x, tol).value;
    result.value_y = integrate(measure, y, tol).value;
    result.sup_difference = max_abs_difference(x, y);
    result.dominated = pointwise_leq(x, y);
    result.pass = std::fabs(result.value_x - result.value_y) <=
                  result.sup_difference + 2.0 * tol;
    if (result.dominated) {
      result.pass =
          result.pass && result.value_x <= result.value_y + tol;
    }
    report.pass = report.pass && result.pass;
    report.cases.push_back(std::move(result));
  }
  return report;
}

}  // namespace qprob
