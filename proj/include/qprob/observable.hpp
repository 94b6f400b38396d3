#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qprob/field.hpp"
#include "qprob/grid.hpp"

namespace qprob {

/// Continuous piecewise-linear map R -> R given by breakpoints with strictly
/// increasing abscissae; constant extension outside the covered interval.
class PiecewiseLinear {
 public:
  struct Breakpoint {
    double t;
    double value;
  };

  explicit PiecewiseLinear(std::vector<Breakpoint> breakpoints);

  double operator()(double t) const noexcept;
  const std::vector<Breakpoint>& breakpoints() const noexcept {
    return breakpoints_;
  }
  bool is_nondecreasing() const noexcept;
  double lipschitz_bound() const noexcept;

 private:
  std::vector<Breakpoint> breakpoints_;
};

enum class ObsKind {
  CoordX,
  CoordY,
  Constant,
  Add,
  Sub,
  Mul,
  Neg,
  Min,
  Max,
  Abs,
  Clamp,
  Power,
  Pwl,
  UrysohnRatio,
};

/// Expression tree over the two coordinate functions. Values are immutable
/// and share subtrees, so copies are cheap.
class Observable {
 public:
  struct Node {
    ObsKind kind;
    std::vector<Observable> args;
    double constant = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int exponent = 1;
    std::shared_ptr<const PiecewiseLinear> pwl;
  };

  const Node& node() const noexcept { return *node_; }

  static Observable wrap(Node node) {
    return Observable(std::make_shared<const Node>(std::move(node)));
  }

 private:
  explicit Observable(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Observable coord_x();
Observable coord_y();
Observable constant(double value);
Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator-(const Observable& a);
Observable min_of(std::vector<Observable> args);
Observable max_of(std::vector<Observable> args);
Observable abs_of(const Observable& a);
Observable clamp_of(const Observable& a, double lo, double hi);
Observable pow_of(const Observable& a, int exponent);
Observable compose_pwl(const Observable& a, PiecewiseLinear map);
/// y/(y+z) with the convention that points where y+z <= 0 map to 0.
Observable urysohn_ratio(const Observable& y, const Observable& z);

double evaluate_at(const Observable& obs, double x, double y);
ScalarField evaluate(const Observable& obs, const GridDomain& domain);

/// Parses the expression grammar accepted by the command line tool:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := unary ('^' posint)?
///   unary  := '-' unary | atom
///   atom   := number | 'x' | 'y' | '(' expr ')'
///           | ('min'|'max') '(' expr (',' expr)+ ')'
///           | 'abs' '(' expr ')'
///           | 'clamp' '(' expr ',' number ',' number ')'
///           | 'pwl' '(' expr (';' number ',' number)+ ')'
/// Throws Error(ParseError) with the offending position in the message.
Observable parse_observable(const std::string& text);

}  // namespace qprob
