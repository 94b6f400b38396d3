#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qprob/constructions.hpp"
#include "qprob/corpus.hpp"
#include "qprob/error.hpp"
#include "qprob/representation.hpp"

using namespace qprob;

namespace {

double ramp_value(double v, double t, double i) {
  return std::min(1.0, std::max(0.0, i * (v - t) - 1.0));
}

}  // namespace

// ============================================================================
// chain elements
// ============================================================================

TEST_CASE("chain elements follow the clamped ramp") {
  const GridDomain domain(33);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  for (const int64_t i : {1, 3, 10}) {
    const ScalarField elem = recovery_chain_element(q, 0.5, i);
    for (size_t cell = 0; cell < elem.values().size(); ++cell) {
      const double want = ramp_value(q.values()[cell], 0.5, double(i));
      CHECK(std::fabs(elem.values()[cell] - want) <= 1e-12);
    }
  }
}

TEST_CASE("chain elements increase with the index") {
  const GridDomain domain(33);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const ScalarField e2 = recovery_chain_element(q, 0.3, 2);
  const ScalarField e5 = recovery_chain_element(q, 0.3, 5);
  const ScalarField e50 = recovery_chain_element(q, 0.3, 50);
  CHECK(pointwise_leq(e2, e5));
  CHECK(pointwise_leq(e5, e50));
  // Between t + 1/i and t + 2/i the ramp is strictly inside (0, 1).
  const RegionMask inside =
      superlevel(q, 0.3 + 0.5) & sublevel_closed(q, 0.3 + 1.0 - 1e-9);
  CHECK(inside.any());
}

// ============================================================================
// probability recovery from the integration functional
// ============================================================================

TEST_CASE("two valued recovery climbs to an exact one") {
  const GridDomain domain(129);
  const AarnesMeasure measure(domain);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const RecoveryResult result = recover_probability(measure, q, 0.5);
  REQUIRE(result.reference.has_value());
  CHECK(*result.reference == 1.0);
  CHECK(result.recovered == 1.0);
  CHECK(result.stabilized);

  // Every evaluated E value equals the ramp at the integral's flip value.
  const double edge = domain.cell_center_x(128);
  const double w = edge * edge;
  for (const auto& [index, value] : result.chain) {
    CHECK(std::fabs(value - ramp_value(w, 0.5, double(index))) <= 1e-9);
  }
  // The plateau at one ends the chain after six steps: 5(w - 0.5) > 2.
  CHECK(result.iterations == 6);
  CHECK(result.chain.size() == 6);
}

TEST_CASE("thresholds above the ring minimum recover zero") {
  const GridDomain domain(129);
  const AarnesMeasure measure(domain);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const RecoveryResult result = recover_probability(measure, q, 0.99);
  REQUIRE(result.reference.has_value());
  CHECK(*result.reference == 0.0);
  CHECK(result.recovered == 0.0);
  for (const auto& [index, value] : result.chain) {
    CHECK(value == 0.0);
  }
}

TEST_CASE("counting measure recovery stabilizes to the open value") {
  const GridDomain domain(65);
  const UniformMeasure measure(domain);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const RecoveryResult result =
      recover_probability(measure, q, 0.37, int64_t(1) << 20);
  REQUIRE(result.reference.has_value());
  CHECK(result.stabilized);
  CHECK(std::fabs(result.recovered - *result.reference) <= 2.0 / 65 + 1e-3);
  // The chain never overshoots the open probability by more than the
  // engine tolerance it was integrated with.
  for (const auto& [index, value] : result.chain) {
    CHECK(value <= *result.reference + 2e-3);
  }
}

TEST_CASE("chain values never decrease") {
  Rng rng(55);
  const GridDomain domain(33);
  const UniformMeasure measure(domain);
  for (int round = 0; round < 4; ++round) {
    const ScalarField f = evaluate(random_quadratic(rng), domain);
    const double t = f.min() + 0.4 * (f.max() - f.min());
    const RecoveryResult result =
        recover_probability(measure, f, t, int64_t(1) << 16);
    for (size_t k = 1; k < result.chain.size(); ++k) {
      CHECK(result.chain[k].second >= result.chain[k - 1].second - 2e-3);
    }
  }
}

// ============================================================================
// round trips over level set corpora
// ============================================================================

TEST_CASE("two valued round trip is exact") {
  Rng rng(2025);
  const GridDomain domain(65);
  const AarnesMeasure measure(domain);
  const std::vector<LevelSet> corpus = random_level_sets(rng, domain, 10, true);
  REQUIRE(corpus.size() == 10);
  const RoundTripReport report = round_trip(measure, corpus);
  CHECK(report.pass);
  REQUIRE(report.cases.size() == 10);
  for (const auto& item : report.cases) {
    CHECK(item.recovered == item.reference);
  }
}

TEST_CASE("counting round trip lands within a cell of the target") {
  Rng rng(2026);
  const GridDomain domain(65);
  const UniformMeasure measure(domain);
  const std::vector<LevelSet> corpus =
      random_level_sets(rng, domain, 10, false);
  const double match_tol = 2.0 / 65 + 1e-3;
  const RoundTripReport report =
      round_trip(measure, corpus, int64_t(1) << 20, 1e-3, match_tol);
  CHECK(report.pass);
  for (const auto& item : report.cases) {
    CHECK(std::fabs(item.recovered - item.reference) <= match_tol);
  }
}

// ============================================================================
// sandwich bounds
// ============================================================================

TEST_CASE("separator fields are sandwiched between their level masks") {
  const GridDomain domain(129);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const RegionMask closed_mask = superlevel_closed(q, 0.6);
  const RegionMask open_mask = superlevel(q, 0.4);
  const Observable y = parse_observable("max(0.6-(x*x+y*y),0)");
  const Observable z = parse_observable("max(x*x+y*y-0.4,0)");
  const ScalarField x_tilde = evaluate(urysohn(y, z, domain), domain);

  const AarnesMeasure aarnes(domain);
  const SandwichReport two_valued =
      check_lmon_sandwich(aarnes, closed_mask, x_tilde, open_mask);
  CHECK(two_valued.pass);
  CHECK(two_valued.closed_value == 1.0);
  CHECK(two_valued.open_value == 1.0);
  CHECK(two_valued.integral_value == doctest::Approx(1.0));

  const UniformMeasure uniform(domain);
  const SandwichReport counting =
      check_lmon_sandwich(uniform, closed_mask, x_tilde, open_mask);
  CHECK(counting.pass);
  CHECK(counting.closed_value <= counting.integral_value + 1e-3);
  CHECK(counting.integral_value <= counting.open_value + 1e-3);
}

TEST_CASE("indicators sandwich themselves") {
  const GridDomain domain(33);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const RegionMask open_mask = superlevel(q, 0.4);
  const RegionMask closed_submask = superlevel_closed(q, 0.6);
  const UniformMeasure uniform(domain);
  const SandwichReport report = check_lmon_sandwich(
      uniform, closed_submask, indicator_field(open_mask), open_mask);
  CHECK(report.pass);
}

TEST_CASE("fields outside the sandwich are rejected") {
  const GridDomain domain(33);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const RegionMask closed_mask = superlevel_closed(q, 0.6);
  const RegionMask open_mask = superlevel(q, 0.4);
  const UniformMeasure uniform(domain);
  try {
    check_lmon_sandwich(uniform, closed_mask, constant_field(domain, 0.5),
                        open_mask);
    FAIL("loose field accepted");
  } catch (const Error& error) {
    CHECK(error.code() == ErrorCode::NotSandwiched);
  }
}
