// Acceptance suite: ten end-to-end criteria with pinned tolerances, one
// verdict line each. The process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "qprob/constructions.hpp"
#include "qprob/corpus.hpp"
#include "qprob/integral.hpp"
#include "qprob/measure.hpp"
#include "qprob/observable.hpp"
#include "qprob/qspace.hpp"
#include "qprob/representation.hpp"

using namespace qprob;

namespace {

int g_failures = 0;

void verdict(int number, bool pass, const std::string& title,
             const std::string& detail) {
  std::printf("[%s] %2d. %s (%s)\n", pass ? "PASS" : "FAIL", number,
              title.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

void failed_with(int number, const std::string& title, const char* what) {
  verdict(number, false, title, std::string("threw: ") + what);
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

// --------------------------------------------------------------------------
// 1. weighted coordinate integrals return the smaller weight
// --------------------------------------------------------------------------
void criterion_1() {
  const std::string title =
      "two-valued integral of a*x^2+b*y^2 equals min(a,b) at n=513";
  try {
    const GridDomain domain(513);
    const AarnesMeasure measure(domain);
    const std::vector<std::pair<double, double>> weights = {
        {2.0, 3.0}, {3.0, 2.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 4.0}};
    double max_err = 0.0;
    double max_ms = 0.0;
    bool pass = true;
    for (const auto& [a, b] : weights) {
      char expr[64];
      std::snprintf(expr, sizeof(expr), "%g*x^2+%g*y^2", a, b);
      const double start = now_ms();
      const IntegralResult result =
          integrate(measure, evaluate(parse_observable(expr), domain), 1e-3);
      const double elapsed = now_ms() - start;
      const double err = std::fabs(result.value - std::min(a, b));
      max_err = std::max(max_err, err);
      max_ms = std::max(max_ms, elapsed);
      pass = pass && err <= 1e-2 && elapsed < 5000.0;
    }
    verdict(1, pass, title,
            "6 cases, max error " + fmt(max_err) + ", max " + fmt(max_ms) +
                " ms");
  } catch (const Error& error) {
    failed_with(1, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 2. the additivity gap of the coordinate squares is a full unit
// --------------------------------------------------------------------------
void criterion_2() {
  const std::string title =
      "E[x^2] = 0, E[y^2] = 0, E[x^2+y^2] = 1 within 1e-2 at n=513";
  try {
    const GridDomain domain(513);
    const AarnesMeasure measure(domain);
    const double ex = integrate(measure, evaluate(parse_observable("x^2"),
                                                  domain), 1e-3).value;
    const double ey = integrate(measure, evaluate(parse_observable("y^2"),
                                                  domain), 1e-3).value;
    const double exy = integrate(measure, evaluate(parse_observable("x^2+y^2"),
                                                   domain), 1e-3).value;
    const bool pass = std::fabs(ex) <= 1e-2 && std::fabs(ey) <= 1e-2 &&
                      std::fabs(exy - 1.0) <= 1e-2;
    verdict(2, pass, title,
            "E[x^2]=" + fmt(ex) + ", E[y^2]=" + fmt(ey) + ", E[sum]=" +
                fmt(exy));
  } catch (const Error& error) {
    failed_with(2, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 3. the counting measure reproduces midpoint quadrature
// --------------------------------------------------------------------------
void criterion_3() {
  const std::string title =
      "uniform E[x^2] = 1/3 and 20 polynomials match quadrature within "
      "2/n+1e-3";
  try {
    const GridDomain domain(513);
    const UniformMeasure measure(domain);
    const double bound = 2.0 / 513 + 1e-3;

    const double ex2 =
        integrate(measure, evaluate(parse_observable("x^2"), domain), 1e-3)
            .value;
    double max_err = std::fabs(ex2 - 1.0 / 3.0);
    bool pass = max_err <= bound;

    Rng rng(303);
    for (int k = 0; k < 20; ++k) {
      const ScalarField field = evaluate(random_polynomial(rng), domain);
      long double mean = 0.0L;
      for (const double v : field.values()) mean += v;
      mean /= (long double)(field.values().size());
      const double value = integrate(measure, field, 1e-3).value;
      const double err = std::fabs(value - double(mean));
      max_err = std::max(max_err, err);
      pass = pass && err <= bound;
    }
    verdict(3, pass, title,
            "bound " + fmt(bound) + ", max error " + fmt(max_err));
  } catch (const Error& error) {
    failed_with(3, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 4. the functional is linear inside a singly generated algebra
// --------------------------------------------------------------------------
void criterion_4() {
  const std::string title =
      "|E[a phi(X)+b psi(X)] - a E[phi(X)] - b E[psi(X)]| <= 3e-2 on "
      "20 seeded cases";
  try {
    const GridDomain domain(513);
    const AarnesMeasure measure(domain);
    const ScalarField x = evaluate(parse_observable("x^2+y^2"), domain);
    Rng rng(404);
    double max_gap = 0.0;
    for (int k = 0; k < 20; ++k) {
      const PiecewiseLinear phi = random_monotone_pwl(rng, 0.0, 2.0);
      const PiecewiseLinear psi = random_monotone_pwl(rng, 0.0, 2.0);
      const double a = rng.uniform(0.3, 2.0);
      const double b = rng.uniform(0.3, 2.0);
      const double e_phi =
          integrate(measure, map_field(x, [&](double v) { return phi(v); }),
                    1e-3)
              .value;
      const double e_psi =
          integrate(measure, map_field(x, [&](double v) { return psi(v); }),
                    1e-3)
              .value;
      const double e_mix =
          integrate(measure,
                    map_field(x, [&](double v) { return a * phi(v) + b * psi(v); }),
                    1e-3)
              .value;
      max_gap = std::max(max_gap, std::fabs(e_mix - a * e_phi - b * e_psi));
    }
    verdict(4, max_gap <= 3e-2, title, "max gap " + fmt(max_gap));
  } catch (const Error& error) {
    failed_with(4, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 5. axiom suite: additivity, monotone convergence, regularity
// --------------------------------------------------------------------------
void criterion_5() {
  const std::string title =
      "50 disjoint pairs additive, regularized chains converge, 20 level "
      "sets regular at n=257";
  try {
    const GridDomain domain(257);
    const AarnesMeasure aarnes(domain);
    const UniformMeasure uniform(domain);
    Rng rng(505);

    const std::vector<DisjointPair> pairs =
        random_disjoint_pairs(rng, domain, 50);
    const AdditivityReport add_two = check_additivity(aarnes, pairs);
    bool exact = add_two.pass;
    for (const auto& item : add_two.cases) exact = exact && item.gap == 0.0;
    const AdditivityReport add_uni = check_additivity(uniform, pairs, 1e-12);

    // Monotone convergence along thinned regularized chains.
    bool chains_pass = true;
    const std::vector<LevelSet> chain_sets =
        random_level_sets(rng, domain, 10, true);
    for (const LevelSet& set : chain_sets) {
      const RegionMask target = superlevel(set.field, set.threshold);
      int64_t stable = 1;
      while (stable < (int64_t(1) << 22) &&
             !(superlevel(set.field, set.threshold + 1.0 / double(stable)) ==
               target)) {
        stable *= 2;
      }
      std::vector<RegionMask> chain;
      for (int64_t i = 1; i <= 12; ++i) {
        chain.push_back(
            superlevel(set.field, set.threshold + 1.0 / double(i)));
      }
      for (int64_t i = 16; i < stable; i *= 2) {
        chain.push_back(
            superlevel(set.field, set.threshold + 1.0 / double(i)));
      }
      chain.push_back(superlevel(set.field, set.threshold + 1.0 / double(stable)));
      chain.push_back(target);
      chains_pass = chains_pass &&
                    check_monotone_convergence(aarnes, chain).pass &&
                    check_monotone_convergence(uniform, chain).pass;
    }

    bool regular = true;
    const std::vector<LevelSet> level_sets =
        random_level_sets(rng, domain, 20, true);
    for (const LevelSet& set : level_sets) {
      regular = regular &&
                check_regularity(aarnes, set.field, set.threshold).pass &&
                check_regularity(uniform, set.field, set.threshold).pass;
    }

    const bool pass = exact && add_uni.pass && chains_pass && regular;
    verdict(5, pass, title,
            std::string("additivity ") + (exact ? "exact" : "violated") +
                "/" + (add_uni.pass ? "<=1e-12" : "violated") + ", chains " +
                (chains_pass ? "ok" : "broken") + ", regularity " +
                (regular ? "ok" : "broken"));
  } catch (const Error& error) {
    failed_with(5, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 6. representation round trip
// --------------------------------------------------------------------------
void criterion_6() {
  const std::string title =
      "P -> E -> P round trip: exact two-valued, within 2/n+1e-3 counting, "
      "50 sets at n=257";
  try {
    const GridDomain domain(257);
    Rng rng(606);
    const std::vector<LevelSet> corpus =
        random_level_sets(rng, domain, 50, false);

    const AarnesMeasure aarnes(domain);
    const RoundTripReport two_valued =
        round_trip(aarnes, corpus, int64_t(1) << 20, 1e-3, 1e-9);
    bool exact = two_valued.pass;
    double max_err = 0.0;
    for (const auto& item : two_valued.cases) {
      exact = exact && item.recovered == item.reference;
    }

    const UniformMeasure uniform(domain);
    const double match_tol = 2.0 / 257 + 1e-3;
    const RoundTripReport counting =
        round_trip(uniform, corpus, int64_t(1) << 20, 1e-3, match_tol);
    for (const auto& item : counting.cases) {
      max_err = std::max(max_err, std::fabs(item.recovered - item.reference));
    }

    verdict(6, exact && counting.pass, title,
            std::string("two-valued ") + (exact ? "exact" : "off") +
                ", counting max error " + fmt(max_err) + " <= " +
                fmt(match_tol));
  } catch (const Error& error) {
    failed_with(6, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 7. staircase decompositions
// --------------------------------------------------------------------------
void criterion_7() {
  const std::string title =
      "staircase sums rebuild X and Y within 1e-9 and parts obey "
      "X_i <= Y_i + delta/n";
  try {
    const GridDomain domain(65);
    Rng rng(707);
    double max_sum_err = 0.0;
    double max_excess = 0.0;
    bool pass = true;
    for (int k = 0; k < 20; ++k) {
      const auto [x, y] = random_dominated_pair(rng, domain, 0.15);
      for (const int parts : {4, 8, 16}) {
        for (const double delta : {0.5, 0.1}) {
          const StaircaseDecomposition dec = staircase(x, y, parts, delta);
          ScalarField sum_x = constant_field(domain, 0.0);
          ScalarField sum_y = constant_field(domain, 0.0);
          for (int i = 0; i < parts; ++i) {
            sum_x = zip_fields(sum_x, dec.parts_x[size_t(i)],
                               [](double u, double v) { return u + v; });
            sum_y = zip_fields(sum_y, dec.parts_y[size_t(i)],
                               [](double u, double v) { return u + v; });
          }
          max_sum_err = std::max({max_sum_err, max_abs_difference(sum_x, x),
                                  max_abs_difference(sum_y, y)});
          const double slack = delta / parts;
          for (int i = 0; i < parts; ++i) {
            const auto& px = dec.parts_x[size_t(i)].values();
            const auto& py = dec.parts_y[size_t(i)].values();
            for (size_t cell = 0; cell < px.size(); ++cell) {
              max_excess =
                  std::max(max_excess, px[cell] - (py[cell] + slack));
            }
          }
        }
      }
    }
    pass = max_sum_err <= 1e-9 && max_excess <= 1e-12;
    verdict(7, pass, title,
            "20 pairs x {4,8,16} x {0.5,0.1}: max sum error " +
                fmt(max_sum_err) + ", max domination excess " +
                fmt(max_excess));
  } catch (const Error& error) {
    failed_with(7, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 8. lipschitz bound and monotonicity of the functional
// --------------------------------------------------------------------------
void criterion_8() {
  const std::string title =
      "|E[X]-E[Y]| <= sup|X-Y| + 2e-3 and domination is preserved on 50 "
      "pairs, both measures";
  try {
    const GridDomain domain(129);
    Rng rng(808);
    const std::vector<std::pair<ScalarField, ScalarField>> pairs =
        random_field_pairs(rng, domain, 50);
    const AarnesMeasure aarnes(domain);
    const UniformMeasure uniform(domain);
    const LipschitzReport two_valued = check_lipschitz(aarnes, pairs, 1e-3);
    const LipschitzReport counting = check_lipschitz(uniform, pairs, 1e-3);
    int dominated = 0;
    for (const auto& item : two_valued.cases) dominated += item.dominated;
    verdict(8, two_valued.pass && counting.pass, title,
            "50 pairs (" + std::to_string(dominated) + " dominated), " +
                (two_valued.pass ? "two-valued ok" : "two-valued violated") +
                ", " + (counting.pass ? "counting ok" : "counting violated"));
  } catch (const Error& error) {
    failed_with(8, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 9. separating observables hit their levels exactly
// --------------------------------------------------------------------------
void criterion_9() {
  const std::string title =
      "separators are exactly 1 on F, exactly 0 off U, in [0,1]: 10 pairs";
  try {
    const GridDomain domain(129);
    Rng rng(909);
    int exercised = 0;
    bool pass = true;
    while (exercised < 10) {
      const Observable q = random_quadratic(rng);
      const ScalarField qf = evaluate(q, domain);
      const double range = qf.max() - qf.min();
      if (range < 1e-6) continue;
      ++exercised;
      const double b = qf.min() + 0.3 * range;
      const double a = qf.min() + 0.6 * range;
      const Observable y = max_of({constant(a) - q, constant(0.0)});
      const Observable z = max_of({q - constant(b), constant(0.0)});
      const ScalarField yf = evaluate(y, domain);
      const ScalarField zf = evaluate(z, domain);
      const ScalarField sep = evaluate(urysohn(y, z, domain), domain);
      for (size_t cell = 0; cell < sep.values().size(); ++cell) {
        const double v = sep.values()[cell];
        pass = pass && v >= 0.0 && v <= 1.0;
        if (yf.values()[cell] == 0.0) pass = pass && v == 1.0;
        if (zf.values()[cell] == 0.0) pass = pass && v == 0.0;
      }
    }
    verdict(9, pass, title,
            pass ? "all level conditions exact" : "level condition violated");
  } catch (const Error& error) {
    failed_with(9, title, error.what());
  }
}

// --------------------------------------------------------------------------
// 10. finite oracle
// --------------------------------------------------------------------------
void criterion_10() {
  const std::string title =
      "m=2 power set enumerates the classical measures; all sigma "
      "algebras m<=4 validate";
  try {
    const std::vector<QuasiProbability> found =
        brute_force_quasi_probabilities(power_set_space(2));
    std::set<std::vector<double>> values;
    for (const QuasiProbability& p : found) values.insert(p.open_values);
    const std::set<std::vector<double>> classical = {
        {0.0, 0.0, 1.0, 1.0}, {0.0, 0.5, 0.5, 1.0}, {0.0, 1.0, 0.0, 1.0}};
    bool pass = found.size() == 3 && values == classical;
    for (const QuasiProbability& p : found) {
      pass = pass && p.granularity == 0.5;
    }

    const std::vector<size_t> partition_counts = {1, 2, 5, 15};
    int validated = 0;
    for (int m = 1; m <= 4; ++m) {
      const std::vector<FiniteQSpace> algebras = all_sigma_algebras(m);
      pass = pass && algebras.size() == partition_counts[size_t(m - 1)];
      for (const FiniteQSpace& space : algebras) {
        pass = pass && validate_qspace(space).valid;
        ++validated;
      }
    }
    verdict(10, pass, title,
            std::to_string(found.size()) + " measures at granularity 0.5, " +
                std::to_string(validated) + " algebras validated");
  } catch (const Error& error) {
    failed_with(10, title, error.what());
  }
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
