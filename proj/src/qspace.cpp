#include "qprob/qspace.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "json.hpp"
#include "qprob/error.hpp"

namespace qprob {

FiniteQSpace::FiniteQSpace(int ground_size, std::vector<uint32_t> opens)
    : ground_size_(ground_size), opens_(std::move(opens)) {
  if (ground_size_ < 1 || ground_size_ > 12) {
    fail(ErrorCode::InvalidArgument, "ground size must be in 1..12");
  }
  for (const uint32_t mask : opens_) {
    if ((mask & ~full_mask()) != 0) {
      fail(ErrorCode::InvalidArgument,
           "open set mentions a point outside the ground set");
    }
  }
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
}

bool FiniteQSpace::contains_open(uint32_t mask) const noexcept {
  return std::binary_search(opens_.begin(), opens_.end(), mask);
}

QSpaceValidation validate_qspace(const FiniteQSpace& space) {
  QSpaceValidation report;
  report.has_empty = space.contains_open(0);
  report.has_full = space.contains_open(space.full_mask());
  const std::vector<uint32_t>& opens = space.opens();
  for (size_t i = 0; i < opens.size(); ++i) {
    for (size_t j = i + 1; j < opens.size(); ++j) {
      const bool union_missing = !space.contains_open(opens[i] | opens[j]);
      const bool intersection_missing =
          !space.contains_open(opens[i] & opens[j]);
      if (union_missing || intersection_missing) {
        report.violations.push_back(
            {opens[i], opens[j], union_missing, intersection_missing});
      }
    }
  }
  report.valid =
      report.has_empty && report.has_full && report.violations.empty();
  return report;
}

MeasurabilityResult is_measurable(const FiniteQSpace& space,
                                  const FiniteObservable& f) {
  if (int(f.values.size()) != space.ground_size()) {
    fail(ErrorCode::InvalidArgument,
         "observable length does not match the ground set");
  }
  std::vector<double> distinct = f.values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  std::vector<uint32_t> classes(distinct.size(), 0);
  for (int point = 0; point < space.ground_size(); ++point) {
    const size_t k = size_t(std::lower_bound(distinct.begin(), distinct.end(),
                                             f.values[size_t(point)]) -
                            distinct.begin());
    classes[k] |= uint32_t(1) << point;
  }
  for (uint32_t pick = 0; pick < (uint32_t(1) << distinct.size()); ++pick) {
    uint32_t preimage = 0;
    for (size_t k = 0; k < distinct.size(); ++k) {
      if (pick & (uint32_t(1) << k)) preimage |= classes[k];
    }
    if (!space.contains_open(preimage)) {
      MeasurabilityResult result;
      result.measurable = false;
      result.witness_preimage = preimage;
      for (size_t k = 0; k < distinct.size(); ++k) {
        if (pick & (uint32_t(1) << k)) {
          result.witness_values.push_back(distinct[k]);
        }
      }
      return result;
    }
  }
  return {true, 0, {}};
}

KaryFunction KaryFunction::sum(int arity) {
  return KaryFunction(Kind::Sum, arity, "sum");
}

KaryFunction KaryFunction::product(int arity) {
  return KaryFunction(Kind::Product, arity, "product");
}

KaryFunction KaryFunction::minimum(int arity) {
  return KaryFunction(Kind::Min, arity, "min");
}

KaryFunction KaryFunction::maximum(int arity) {
  return KaryFunction(Kind::Max, arity, "max");
}

KaryFunction KaryFunction::absolute() {
  return KaryFunction(Kind::Abs, 1, "abs");
}

KaryFunction KaryFunction::projection(int arity, int index) {
  if (index < 0 || index >= arity) {
    fail(ErrorCode::InvalidArgument, "projection index out of range");
  }
  KaryFunction fn(Kind::Projection, arity,
                  "projection_" + std::to_string(index));
  fn.projection_index_ = index;
  return fn;
}

KaryFunction KaryFunction::max_of_min(
    int arity, std::vector<std::vector<AffineForm>> clauses) {
  if (clauses.empty()) {
    fail(ErrorCode::InvalidArgument, "max-of-min needs at least one clause");
  }
  for (const auto& clause : clauses) {
    if (clause.empty()) {
      fail(ErrorCode::InvalidArgument, "empty min clause");
    }
    for (const AffineForm& form : clause) {
      if (int(form.coefficients.size()) != arity) {
        fail(ErrorCode::InvalidArgument,
             "affine form arity does not match the function arity");
      }
    }
  }
  KaryFunction fn(Kind::MaxOfMin, arity, "max_of_min");
  fn.clauses_ = std::move(clauses);
  return fn;
}

double KaryFunction::operator()(const std::vector<double>& args) const {
  if (int(args.size()) != arity_) {
    fail(ErrorCode::InvalidArgument, "wrong argument count for " + name_);
  }
  switch (kind_) {
    case Kind::Sum: {
      double total = 0.0;
      for (const double v : args) total += v;
      return total;
    }
    case Kind::Product: {
      double total = 1.0;
      for (const double v : args) total *= v;
      return total;
    }
    case Kind::Min:
      return *std::min_element(args.begin(), args.end());
    case Kind::Max:
      return *std::max_element(args.begin(), args.end());
    case Kind::Abs:
      return std::fabs(args[0]);
    case Kind::Projection:
      return args[size_t(projection_index_)];
    case Kind::MaxOfMin: {
      double best = 0.0;
      bool first_clause = true;
      for (const auto& clause : clauses_) {
        double clause_value = 0.0;
        bool first_form = true;
        for (const AffineForm& form : clause) {
          double v = form.offset;
          for (size_t k = 0; k < args.size(); ++k) {
            v += form.coefficients[k] * args[k];
          }
          clause_value = first_form ? v : std::min(clause_value, v);
          first_form = false;
        }
        best = first_clause ? clause_value : std::max(best, clause_value);
        first_clause = false;
      }
      return best;
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt combiner");
}

AlgebraReport check_observable_algebra(const FiniteQSpace& space,
                                       const std::vector<FiniteObservable>& fs,
                                       const KaryFunction& fn) {
  if (int(fs.size()) != fn.arity()) {
    fail(ErrorCode::InvalidArgument, "input count does not match the arity");
  }
  for (const FiniteObservable& f : fs) {
    const MeasurabilityResult check = is_measurable(space, f);
    if (!check.measurable) {
      fail(ErrorCode::InvalidArgument,
           "inputs to the algebra check must be measurable");
    }
  }
  AlgebraReport report;
  report.composed.values.resize(size_t(space.ground_size()));
  std::vector<double> args(fs.size());
  for (int point = 0; point < space.ground_size(); ++point) {
    for (size_t k = 0; k < fs.size(); ++k) {
      args[k] = fs[k].values[size_t(point)];
    }
    report.composed.values[size_t(point)] = fn(args);
  }
  report.result = is_measurable(space, report.composed);
  report.pass = report.result.measurable;
  return report;
}

namespace {

struct ConstraintSet {
  // P[u] = P[i] + P[j]
  std::vector<std::array<size_t, 3>> open_sums;
  // P[i] + P[j] = 1 + P[w]
  std::vector<std::array<size_t, 3>> closed_sums;
  // P[u] = P[i] + 1 - P[j]
  std::vector<std::array<size_t, 3>> mixed_sums;
  // P[i] <= P[j]
  std::vector<std::array<size_t, 2>> monotone;
};

size_t index_of(const std::vector<uint32_t>& opens, uint32_t mask) {
  return size_t(std::lower_bound(opens.begin(), opens.end(), mask) -
                opens.begin());
}

ConstraintSet build_constraints(const FiniteQSpace& space) {
  const std::vector<uint32_t>& opens = space.opens();
  const uint32_t full = space.full_mask();
  ConstraintSet out;
  for (size_t i = 0; i < opens.size(); ++i) {
    for (size_t j = 0; j < opens.size(); ++j) {
      const uint32_t a = opens[i];
      const uint32_t b = opens[j];
      if (i < j) {
        if ((a & b) == a) out.monotone.push_back({i, j});
        if ((a & b) == b) out.monotone.push_back({j, i});
        if ((a & b) == 0 && space.contains_open(a | b)) {
          out.open_sums.push_back({i, j, index_of(opens, a | b)});
        }
        if ((a | b) == full && space.contains_open(a & b)) {
          out.closed_sums.push_back({i, j, index_of(opens, a & b)});
        }
      }
      // open a disjoint from closed ~b means a inside b; the union a | ~b
      // may be accepted as open directly or as closed via its complement.
      if ((a & ~b & full) == 0) {
        const uint32_t mixed_union = (a | ~b) & full;
        if (space.contains_open(mixed_union)) {
          out.mixed_sums.push_back({index_of(opens, mixed_union), i, j});
        }
        const uint32_t complement = ~mixed_union & full;  // = b minus a
        if (space.contains_open(complement)) {
          // 1 - P[complement] = P[a] + 1 - P[b]
          out.open_sums.push_back({i, index_of(opens, complement), j});
        }
      }
    }
  }
  return out;
}

bool nearly(double a, double b) { return std::fabs(a - b) <= 1e-12; }

class Enumerator {
 public:
  Enumerator(const FiniteQSpace& space, const std::vector<double>& grid)
      : opens_(space.opens()),
        grid_(grid),
        constraints_(build_constraints(space)) {
    order_.resize(opens_.size());
    for (size_t k = 0; k < order_.size(); ++k) order_[k] = k;
    std::sort(order_.begin(), order_.end(), [&](size_t l, size_t r) {
      const int pl = std::popcount(opens_[l]);
      const int pr = std::popcount(opens_[r]);
      return pl != pr ? pl < pr : opens_[l] < opens_[r];
    });
    position_.assign(opens_.size(), 0);
    for (size_t rank = 0; rank < order_.size(); ++rank) {
      position_[order_[rank]] = rank;
    }
    empty_index_ = space.contains_open(0) ? index_of(opens_, 0) : SIZE_MAX;
    full_index_ = space.contains_open(space.full_mask())
                      ? index_of(opens_, space.full_mask())
                      : SIZE_MAX;
  }

  std::vector<std::vector<double>> run() {
    values_.assign(opens_.size(), 0.0);
    solutions_.clear();
    descend(0);
    return solutions_;
  }

 private:
  bool admissible(size_t rank) const {
    const size_t var = order_[rank];
    const double v = values_[var];
    if (var == empty_index_ && !nearly(v, 0.0)) return false;
    if (var == full_index_ && !nearly(v, 1.0)) return false;
    auto ready = [&](size_t other) { return position_[other] <= rank; };
    for (const auto& [i, j] : constraints_.monotone) {
      if ((i == var || j == var) && ready(i) && ready(j)) {
        if (values_[i] > values_[j] + 1e-12) return false;
      }
    }
    for (const auto& [i, j, u] : constraints_.open_sums) {
      if ((i == var || j == var || u == var) && ready(i) && ready(j) &&
          ready(u)) {
        if (!nearly(values_[u], values_[i] + values_[j])) return false;
      }
    }
    for (const auto& [i, j, w] : constraints_.closed_sums) {
      if ((i == var || j == var || w == var) && ready(i) && ready(j) &&
          ready(w)) {
        if (!nearly(values_[i] + values_[j], 1.0 + values_[w])) return false;
      }
    }
    for (const auto& [u, i, j] : constraints_.mixed_sums) {
      if ((i == var || j == var || u == var) && ready(i) && ready(j) &&
          ready(u)) {
        if (!nearly(values_[u], values_[i] + 1.0 - values_[j])) return false;
      }
    }
    return true;
  }

  void descend(size_t rank) {
    if (rank == order_.size()) {
      solutions_.push_back(values_);
      return;
    }
    for (const double v : grid_) {
      values_[order_[rank]] = v;
      if (admissible(rank)) descend(rank + 1);
    }
  }

  const std::vector<uint32_t>& opens_;
  const std::vector<double>& grid_;
  ConstraintSet constraints_;
  std::vector<size_t> order_;
  std::vector<size_t> position_;
  size_t empty_index_;
  size_t full_index_;
  std::vector<double> values_;
  std::vector<std::vector<double>> solutions_;
};

}  // namespace

std::vector<QuasiProbability> brute_force_quasi_probabilities(
    const FiniteQSpace& space) {
  if (space.ground_size() > 6 || space.opens().size() > 20) {
    fail(ErrorCode::BudgetExceeded,
         "enumeration budget is ground size <= 6 and at most 20 open sets");
  }
  const std::vector<double> coarse = {0.0, 0.5, 1.0};
  const std::vector<double> dyadic = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<QuasiProbability> out;
  for (const std::vector<double>* grid : {&coarse, &dyadic}) {
    const double granularity = grid == &coarse ? 0.5 : 0.25;
    Enumerator enumerator(space, *grid);
    for (std::vector<double>& solution : enumerator.run()) {
      out.push_back({std::move(solution), granularity});
    }
    if (!out.empty()) break;
  }
  return out;
}

FiniteQSpace qspace_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& error) {
    fail(ErrorCode::BadFormat, std::string("bad space file: ") + error.what());
  }
  if (!doc.is_object() || !doc.contains("ground_size") ||
      !doc.contains("open_sets")) {
    fail(ErrorCode::BadFormat,
         "space file needs \"ground_size\" and \"open_sets\"");
  }
  if (!doc["ground_size"].is_number_integer()) {
    fail(ErrorCode::BadFormat, "\"ground_size\" must be an integer");
  }
  const int m = doc["ground_size"].get<int>();
  if (m < 1 || m > 12) {
    fail(ErrorCode::BadFormat, "\"ground_size\" must be in 1..12");
  }
  if (!doc["open_sets"].is_array()) {
    fail(ErrorCode::BadFormat, "\"open_sets\" must be an array of arrays");
  }
  std::vector<uint32_t> opens;
  for (const auto& entry : doc["open_sets"]) {
    if (!entry.is_array()) {
      fail(ErrorCode::BadFormat, "each open set must be an integer array");
    }
    uint32_t mask = 0;
    for (const auto& point : entry) {
      if (!point.is_number_integer()) {
        fail(ErrorCode::BadFormat, "open-set entries must be integers");
      }
      const int64_t p = point.get<int64_t>();
      if (p < 0 || p >= m) {
        fail(ErrorCode::BadFormat,
             "point " + std::to_string(p) + " is outside 0.." +
                 std::to_string(m - 1));
      }
      mask |= uint32_t(1) << p;
    }
    opens.push_back(mask);
  }
  return FiniteQSpace(m, std::move(opens));
}

FiniteQSpace power_set_space(int ground_size) {
  if (ground_size < 1 || ground_size > 12) {
    fail(ErrorCode::InvalidArgument, "ground size must be in 1..12");
  }
  std::vector<uint32_t> opens;
  opens.reserve(size_t(1) << ground_size);
  for (uint32_t mask = 0; mask < (uint32_t(1) << ground_size); ++mask) {
    opens.push_back(mask);
  }
  return FiniteQSpace(ground_size, std::move(opens));
}

std::vector<FiniteQSpace> all_sigma_algebras(int ground_size) {
  if (ground_size < 1 || ground_size > 6) {
    fail(ErrorCode::InvalidArgument,
         "sigma-algebra enumeration supports ground sizes 1..6");
  }
  std::vector<FiniteQSpace> out;
  std::vector<int> assignment(size_t(ground_size), 0);
  // Restricted growth strings enumerate set partitions exactly once.
  auto emit = [&] {
    const int blocks =
        1 + *std::max_element(assignment.begin(), assignment.end());
    std::vector<uint32_t> block_masks(size_t(blocks), 0);
    for (int point = 0; point < ground_size; ++point) {
      block_masks[size_t(assignment[size_t(point)])] |= uint32_t(1) << point;
    }
    std::vector<uint32_t> opens;
    opens.reserve(size_t(1) << blocks);
    for (uint32_t pick = 0; pick < (uint32_t(1) << blocks); ++pick) {
      uint32_t mask = 0;
      for (int b = 0; b < blocks; ++b) {
        if (pick & (uint32_t(1) << b)) mask |= block_masks[size_t(b)];
      }
      opens.push_back(mask);
    }
    out.push_back(FiniteQSpace(ground_size, std::move(opens)));
  };
  auto recurse = [&](auto&& self, int point, int max_used) -> void {
    if (point == ground_size) {
      emit();
      return;
    }
    for (int label = 0; label <= max_used + 1; ++label) {
      assignment[size_t(point)] = label;
      self(self, point + 1, std::max(max_used, label));
    }
  };
  recurse(recurse, 1, 0);  // point 0 always gets label 0
  return out;
}

}  // namespace qprob
