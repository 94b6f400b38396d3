#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprob/field.hpp"
#include "qprob/integral.hpp"
#include "qprob/measure.hpp"

namespace qprob {

/// i-th element of the chain climbing to the indicator of {field > t}:
/// clamp(i (field - t - 1/i), 0, 1), realized as a piecewise-linear ramp
/// composed with the field (0 up to t + 1/i, 1 from t + 2/i on).
ScalarField recovery_chain_element(const ScalarField& field, double t,
                                   int64_t i);

struct RecoveryResult {
  double recovered;                 // sup of E along the chain
  std::optional<double> reference;  // direct P{field > t} when available
  std::vector<std::pair<int64_t, double>> chain;  // (i, E[X_i]) evaluated
  int64_t iterations;                             // integrals evaluated
  bool stabilized;  // chain provably reached its sup before the index cap
};

/// Recovers P{field > t} from the integration functional alone, as the sup
/// of E over the ramp chain. The chain is evaluated on a thinned index set
/// (1..8, powers of two, the index cap, and the first index whose ramp
/// already equals the indicator of the target); E is nondecreasing along
/// the chain, so the sup over the full range is attained at the largest
/// evaluated index. Stops early once the ramp coincides with the indicator
/// or, for two-valued measures, once two successive E values agree and are
/// positive (a positive plateau only happens at the ceiling). Throws
/// NonMonotoneMeasure if the E values ever decrease beyond 1e-9.
RecoveryResult recover_probability(const QuasiMeasure& measure,
                                   const ScalarField& field, double t,
                                   int64_t steps = 32,
                                   double engine_tol = 1e-3);

struct LevelSet {
  ScalarField field;
  double threshold;
  std::string label;
};

struct RoundTripReport {
  struct Case {
    std::string label;
    double recovered;
    double reference;
    bool pass;
  };
  std::vector<Case> cases;
  bool pass;
};

/// P -> E -> P on a corpus of superlevel sets. Two-valued measures must
/// round-trip to exact equality; others within match_tol.
RoundTripReport round_trip(const QuasiMeasure& measure,
                           const std::vector<LevelSet>& corpus,
                           int64_t steps = int64_t(1) << 20,
                           double engine_tol = 1e-3, double match_tol = 1e-9);

struct SandwichReport {
  double closed_value;    // P(F)
  double integral_value;  // E[X]
  double open_value;      // P(U)
  bool pass;
};

/// Requires 1_F <= X <= 1_U cellwise (NotSandwiched otherwise) and asserts
/// P(F) - tol <= E[X] <= P(U) + tol.
SandwichReport check_lmon_sandwich(const QuasiMeasure& measure,
                                   const RegionMask& closed_mask,
                                   const ScalarField& x,
                                   const RegionMask& open_mask,
                                   double tol = 1e-3);

}  // namespace qprob
