#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qprob/field.hpp"
#include "qprob/measure.hpp"
#include "qprob/observable.hpp"

namespace qprob {

/// Right-continuous step interpolation through sampled (t, F(t)) points;
/// 0 to the left of the first sample.
class StepCdf {
 public:
  StepCdf() = default;
  explicit StepCdf(std::vector<std::pair<double, double>> samples);

  double operator()(double t) const noexcept;
  const std::vector<std::pair<double, double>>& samples() const noexcept {
    return samples_;
  }

 private:
  std::vector<std::pair<double, double>> samples_;
};

enum class IntegrationMethod { Bisection, Riemann };

const char* method_name(IntegrationMethod method);

struct IntegralResult {
  double value;
  IntegrationMethod method;
  int64_t evaluations;        // measure calls
  double tolerance_achieved;  // bracket half-width; 0 on the exact path
};

/// F(t) = 1 - P{field > t} at the given thresholds (sorted ascending).
/// With an empty `ts`, samples 129 equispaced thresholds across the field
/// range and bisects any jump of more than 0.05 down to ~1e-9 of the range.
/// Throws NonMonotoneMeasure if the values decrease beyond 1e-12.
StepCdf cdf(const QuasiMeasure& measure, const ScalarField& field,
            std::vector<double> ts = {}, int base_samples = 129);

/// Layer-cake integral: min + integral of P{field > t} over [min, max].
/// Two-valued measures take the exact path: P{field > t} is a nonincreasing
/// 0/1 step in t, so a bisection over the field's own value set finds the
/// flip threshold, which *is* the integral. Other measures use adaptive
/// interval halving with monotone bracketing until the bracket half-width
/// is at most tol.
IntegralResult integrate(const QuasiMeasure& measure, const ScalarField& field,
                         double tol = 1e-3);

/// Stieltjes sum of phi against the distribution of the field: mass at the
/// minimum plus midpoint-weighted increments of the CDF over a schedule
/// refined by phi's breakpoints. Agrees with integrate() of the composed
/// field within combined tolerance.
double expectation_of_composition(const QuasiMeasure& measure,
                                  const ScalarField& field,
                                  const PiecewiseLinear& phi,
                                  int base_samples = 1025);

struct IntegralConvergenceReport {
  std::vector<double> values;
  double limit_value;
  bool monotone;
  bool pass;
};

/// Sequence must satisfy X_1 <= X_2 <= ... <= X pointwise (NotMonotone
/// otherwise); asserts the integrals climb to the integral of the limit.
IntegralConvergenceReport check_monotone_convergence_of_integral(
    const QuasiMeasure& measure, const std::vector<ScalarField>& sequence,
    const ScalarField& limit, double tol);

struct LipschitzReport {
  struct Case {
    std::string label;
    double value_x;
    double value_y;
    double sup_difference;
    bool dominated;  // X <= Y pointwise
    bool pass;
  };
  std::vector<Case> cases;
  bool pass;
};

/// |E[X] - E[Y]| <= sup|X - Y| + 2 tol on each pair; when X <= Y pointwise
/// additionally E[X] <= E[Y] + tol.
LipschitzReport check_lipschitz(
    const QuasiMeasure& measure,
    const std::vector<std::pair<ScalarField, ScalarField>>& pairs,
    double tol);

}  // namespace qprob
