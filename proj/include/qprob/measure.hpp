#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qprob/field.hpp"
#include "qprob/grid.hpp"

namespace qprob {

/// Normalized monotone set function on open masks, with the closed-mask
/// value always derived by complementation.
class QuasiMeasure {
 public:
  virtual ~QuasiMeasure() = default;

  virtual double measure_open(const RegionMask& mask) const = 0;
  virtual bool is_two_valued() const noexcept = 0;
  virtual std::string name() const = 0;
  virtual const GridDomain& domain() const noexcept = 0;

  /// Measure of {field > t}. Default builds the mask; implementations with
  /// a cheaper route (counting measures) override.
  virtual double measure_of_superlevel(const ScalarField& field,
                                       double t) const;

  double measure_closed(const RegionMask& mask) const;
};

/// {0,1}-valued quasi-measure determined by the center marker cell and the
/// boundary ring: an open mask has measure 1 iff one of its
/// eight-connected components either contains the marker cell and reaches
/// the boundary ring, or contains the entire boundary ring.
class AarnesMeasure final : public QuasiMeasure {
 public:
  explicit AarnesMeasure(const GridDomain& domain);

  double measure_open(const RegionMask& mask) const override;
  bool is_two_valued() const noexcept override { return true; }
  std::string name() const override { return "aarnes"; }
  const GridDomain& domain() const noexcept override { return domain_; }

 private:
  GridDomain domain_;
  RegionMask ring_;
};

/// Counting measure: popcount / n^2. Classical reduction oracle.
class UniformMeasure final : public QuasiMeasure {
 public:
  explicit UniformMeasure(const GridDomain& domain) : domain_(domain) {}

  double measure_open(const RegionMask& mask) const override;
  bool is_two_valued() const noexcept override { return false; }
  std::string name() const override { return "uniform"; }
  const GridDomain& domain() const noexcept override { return domain_; }

  double measure_of_superlevel(const ScalarField& field,
                               double t) const override;

 private:
  GridDomain domain_;
};

/// Factory used by the CLI; accepts "aarnes" and "uniform".
std::unique_ptr<QuasiMeasure> make_measure(const std::string& name,
                                           const GridDomain& domain);

enum class MaskRole { Open, Closed };

double measure_by_role(const QuasiMeasure& measure, const RegionMask& mask,
                       MaskRole role);

struct DisjointPair {
  RegionMask a;
  RegionMask b;
  MaskRole role_a;
  MaskRole role_b;
  MaskRole role_union;
  std::string label;
};

struct AdditivityReport {
  struct Case {
    std::string label;
    double value_a;
    double value_b;
    double value_union;
    double gap;  // |P(A ⊎ B) − P(A) − P(B)|
    bool pass;
  };
  std::vector<Case> cases;
  bool pass;
};

/// Checks P(A ⊎ B) = P(A) + P(B) per pair. Throws NotDisjoint when masks
/// overlap; adjacency is the corpus generator's concern, not an error here.
AdditivityReport check_additivity(const QuasiMeasure& measure,
                                  const std::vector<DisjointPair>& pairs,
                                  double tol = 1e-12);

struct ConvergenceReport {
  std::vector<double> values;  // P(U_i) along the chain
  double limit_value;          // P of the last element
  bool monotone;
  bool pass;  // monotone and sup equals the limit value
};

/// Chain must be nondecreasing under inclusion with the limit set last;
/// throws NotIncreasing otherwise.
ConvergenceReport check_monotone_convergence(
    const QuasiMeasure& measure, const std::vector<RegionMask>& chain,
    double tol = 1e-12);

struct RegularityReport {
  std::vector<int64_t> schedule;      // regularization indices i
  std::vector<double> closed_values;  // P_closed({field >= t + 1/i})
  double open_value;                  // P_open({field > t})
  double sup_closed;
  bool pass;
};

/// Inner regularity: sup over closed approximants {field >= t + 1/i}
/// reaches the open value. The index schedule is 1..8, then powers of two,
/// plus the first index at which the closed mask already equals the open
/// target (so the sup is attained at grid scale).
RegularityReport check_regularity(const QuasiMeasure& measure,
                                  const ScalarField& field, double t,
                                  int64_t max_index = int64_t(1) << 20,
                                  double tol = 1e-9);

}  // namespace qprob
