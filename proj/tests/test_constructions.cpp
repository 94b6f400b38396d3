#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qprob/constructions.hpp"
#include "qprob/corpus.hpp"
#include "qprob/error.hpp"
#include "qprob/field.hpp"
#include "qprob/observable.hpp"

using namespace qprob;

namespace {

ErrorCode code_of(const Error& error) { return error.code(); }

}  // namespace

// ============================================================================
// separating functions
// ============================================================================

TEST_CASE("separator hits its levels exactly") {
  const GridDomain domain(65);
  const Observable q = parse_observable("x*x+y*y");
  const Observable y = parse_observable("max(0.6-(x*x+y*y),0)");
  const Observable z = parse_observable("max(x*x+y*y-0.4,0)");
  const Observable sep = urysohn(y, z, domain);

  const ScalarField qf = evaluate(q, domain);
  const ScalarField sf = evaluate(sep, domain);
  int64_t ones = 0;
  int64_t zeros = 0;
  for (int32_t iy = 0; iy < 65; ++iy) {
    for (int32_t ix = 0; ix < 65; ++ix) {
      const double qv = qf.value(ix, iy);
      const double sv = sf.value(ix, iy);
      CHECK(sv >= 0.0);
      CHECK(sv <= 1.0);
      if (qv >= 0.6) {
        // Zero set of y: the value is an exact 1.0, not merely close.
        CHECK(sv == 1.0);
        ++ones;
      }
      if (qv <= 0.4) {
        CHECK(sv == 0.0);
        ++zeros;
      }
    }
  }
  // The grid actually exercises both level sets.
  CHECK(ones > 0);
  CHECK(zeros > 0);
}

TEST_CASE("separator levels are exact on seeded conic pairs") {
  Rng rng(31);
  const GridDomain domain(33);
  for (int round = 0; round < 10; ++round) {
    const Observable q = random_quadratic(rng);
    const ScalarField qf = evaluate(q, domain);
    const double lo = qf.min();
    const double range = qf.max() - lo;
    if (range < 1e-6) continue;
    const double b = lo + 0.3 * range;
    const double a = lo + 0.6 * range;
    const Observable y = max_of({constant(a) - q, constant(0.0)});
    const Observable z = max_of({q - constant(b), constant(0.0)});
    const ScalarField sf = evaluate(urysohn(y, z, domain), domain);
    for (int64_t cell = 0; cell < domain.cell_count(); ++cell) {
      const double qv = qf.values()[size_t(cell)];
      const double sv = sf.values()[size_t(cell)];
      CHECK(sv >= 0.0);
      CHECK(sv <= 1.0);
      if (qv >= a) CHECK(sv == 1.0);
      if (qv <= b) CHECK(sv == 0.0);
    }
  }
}

TEST_CASE("separator rejects bad inputs") {
  const GridDomain domain(9);
  try {
    urysohn(parse_observable("x"), parse_observable("1"), domain);
    FAIL("negative input accepted");
  } catch (const Error& error) {
    CHECK(code_of(error) == ErrorCode::NegativeInput);
  }
  try {
    urysohn(parse_observable("max(x,0)"), parse_observable("max(0-x,0)"),
            domain);
    FAIL("common zero accepted");
  } catch (const Error& error) {
    CHECK(code_of(error) == ErrorCode::CommonZero);
  }
}

// ============================================================================
// staircase decompositions
// ============================================================================

TEST_CASE("staircase sums telescope back and parts stay dominated") {
  Rng rng(17);
  const GridDomain domain(17);
  for (int round = 0; round < 8; ++round) {
    const auto [x, y] = random_dominated_pair(rng, domain, 0.15);
    REQUIRE(pointwise_leq(x, y));
    for (const int parts : {4, 8, 16}) {
      for (const double delta : {0.5, 0.1}) {
        const StaircaseDecomposition dec = staircase(x, y, parts, delta);
        REQUIRE(int(dec.parts_x.size()) == parts);
        REQUIRE(int(dec.parts_y.size()) == parts);
        REQUIRE(dec.thresholds.size() == size_t(parts) + 1);
        CHECK(dec.thresholds.front() == 0.0);
        CHECK(dec.shift == std::max(0.0, -x.min()));

        ScalarField sum_x = constant_field(domain, 0.0);
        ScalarField sum_y = constant_field(domain, 0.0);
        for (int k = 0; k < parts; ++k) {
          sum_x = zip_fields(sum_x, dec.parts_x[size_t(k)],
                             [](double u, double v) { return u + v; });
          sum_y = zip_fields(sum_y, dec.parts_y[size_t(k)],
                             [](double u, double v) { return u + v; });
        }
        CHECK(max_abs_difference(sum_x, x) <= 1e-9);
        CHECK(max_abs_difference(sum_y, y) <= 1e-9);

        const double slack = delta / parts;
        for (int k = 0; k < parts; ++k) {
          const auto& px = dec.parts_x[size_t(k)].values();
          const auto& py = dec.parts_y[size_t(k)].values();
          for (size_t i = 0; i < px.size(); ++i) {
            CHECK(px[i] <= py[i] + slack + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("staircase handles negative fields through the shift") {
  const GridDomain domain(9);
  const ScalarField x = constant_field(domain, -0.3);
  const ScalarField y = constant_field(domain, -0.1);
  const StaircaseDecomposition dec = staircase(x, y, 4, 0.5);
  CHECK(dec.shift == doctest::Approx(0.3));
  ScalarField sum_x = constant_field(domain, 0.0);
  for (const ScalarField& part : dec.parts_x) {
    sum_x = zip_fields(sum_x, part, [](double u, double v) { return u + v; });
  }
  CHECK(max_abs_difference(sum_x, x) <= 1e-9);
}

TEST_CASE("staircase rejects coarse partitions and reversed pairs") {
  const GridDomain domain(9);
  const ScalarField zero = constant_field(domain, 0.0);
  const ScalarField one = constant_field(domain, 1.0);
  try {
    staircase(zero, one, 4, 0.1);
    FAIL("coarse partition accepted");
  } catch (const Error& error) {
    CHECK(code_of(error) == ErrorCode::PartitionTooCoarse);
  }
  try {
    staircase(one, zero, 4, 0.5);
    FAIL("reversed domination accepted");
  } catch (const Error& error) {
    CHECK(code_of(error) == ErrorCode::NotDominated);
  }
}

// ============================================================================
// open regularization
// ============================================================================

TEST_CASE("regularized sequence climbs into the open superlevel") {
  const GridDomain domain(33);
  const ScalarField q = evaluate(parse_observable("x*x+y*y"), domain);
  const double t = 0.5;
  const std::vector<RegionMask> masks = regularized_sequence(q, t, 64);
  REQUIRE(masks.size() == 64);
  const RegionMask target = superlevel(q, t);
  for (size_t i = 0; i < masks.size(); ++i) {
    CHECK(masks[i] == superlevel(q, t + 1.0 / double(i + 1)));
    CHECK(masks[i].is_subset_of(target));
    if (i > 0) CHECK(masks[i - 1].is_subset_of(masks[i]));
  }

  // Once 1/i drops below the value gap above t, the chain saturates.
  const std::vector<double>& sorted = q.sorted_values();
  double next = t;
  for (const double v : sorted) {
    if (v > t) {
      next = v;
      break;
    }
  }
  REQUIRE(next > t);
  const int saturation = int(1.0 / (next - t)) + 1;
  if (saturation <= 64) {
    CHECK(masks.back() == target);
    CHECK(masks[size_t(saturation - 1)] == target);
  }
}
