#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qprob {

/// Finite quasi-measurable space: ground set {0, ..., m-1} with m <= 12 and
/// a family of "open" subsets stored as bitmasks. The closed family is the
/// complements; both are implicit in the open list.
class FiniteQSpace {
 public:
  FiniteQSpace(int ground_size, std::vector<uint32_t> opens);

  int ground_size() const noexcept { return ground_size_; }
  uint32_t full_mask() const noexcept {
    return uint32_t((uint32_t(1) << ground_size_) - 1);
  }
  /// Deduplicated, ascending.
  const std::vector<uint32_t>& opens() const noexcept { return opens_; }
  bool contains_open(uint32_t mask) const noexcept;

 private:
  int ground_size_;
  std::vector<uint32_t> opens_;
};

struct QSpaceValidation {
  struct Violation {
    uint32_t a;
    uint32_t b;
    bool union_missing;
    bool intersection_missing;
  };
  bool has_empty;
  bool has_full;
  std::vector<Violation> violations;
  bool valid;
};

/// Closure of the open family under pairwise union and intersection, plus
/// membership of the empty and full sets.
QSpaceValidation validate_qspace(const FiniteQSpace& space);

struct FiniteObservable {
  std::vector<double> values;  // one per ground-set point
};

struct MeasurabilityResult {
  bool measurable;
  uint32_t witness_preimage;           // offending preimage when not
  std::vector<double> witness_values;  // the value classes selecting it
};

/// A function on a finite set is measurable iff the preimage of every open
/// subset of the reals is open; those preimages are exactly the unions of
/// value-class preimages, so all 2^k of them are enumerated (k = number of
/// distinct values, at most the ground size).
MeasurabilityResult is_measurable(const FiniteQSpace& space,
                                  const FiniteObservable& f);

struct AffineForm {
  std::vector<double> coefficients;
  double offset;
};

/// Continuous k-ary combiner for the observable-algebra check: the named
/// builtins plus arbitrary max-of-min affine forms (the lattice normal form
/// of piecewise-linear functions in k variables).
class KaryFunction {
 public:
  static KaryFunction sum(int arity);
  static KaryFunction product(int arity);
  static KaryFunction minimum(int arity);
  static KaryFunction maximum(int arity);
  static KaryFunction absolute();
  static KaryFunction projection(int arity, int index);
  static KaryFunction max_of_min(int arity,
                                 std::vector<std::vector<AffineForm>> clauses);

  int arity() const noexcept { return arity_; }
  const std::string& name() const noexcept { return name_; }
  double operator()(const std::vector<double>& args) const;

 private:
  enum class Kind { Sum, Product, Min, Max, Abs, Projection, MaxOfMin };

  KaryFunction(Kind kind, int arity, std::string name)
      : kind_(kind), arity_(arity), name_(std::move(name)) {}

  Kind kind_;
  int arity_;
  std::string name_;
  int projection_index_ = 0;
  std::vector<std::vector<AffineForm>> clauses_;
};

struct AlgebraReport {
  FiniteObservable composed;
  MeasurabilityResult result;
  bool pass;
};

/// Applies the combiner pointwise to measurable inputs and checks the
/// result is measurable; inputs that are themselves non-measurable are an
/// argument error, not a finding.
AlgebraReport check_observable_algebra(const FiniteQSpace& space,
                                       const std::vector<FiniteObservable>& fs,
                                       const KaryFunction& fn);

struct QuasiProbability {
  std::vector<double> open_values;  // aligned with space.opens()
  double granularity;
};

/// Exhaustive search for set functions on the open family (closed values by
/// complementation) that are normalized, additive on disjoint unions staying
/// in the family in any role combination, and monotone on nested opens.
/// Values range over {0, 1/2, 1}, falling back to quarters when the coarse
/// grid admits nothing. Budget: ground size <= 6 and at most 20 opens.
std::vector<QuasiProbability> brute_force_quasi_probabilities(
    const FiniteQSpace& space);

/// Parses {"ground_size": m, "open_sets": [[0,1], ...]}.
FiniteQSpace qspace_from_json(const std::string& text);

FiniteQSpace power_set_space(int ground_size);

/// Every sigma-algebra on {0..m-1}: one per set partition, taking all
/// unions of blocks.
std::vector<FiniteQSpace> all_sigma_algebras(int ground_size);

}  // namespace qprob
