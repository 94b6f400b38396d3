#include "qprob/observable.hpp"

#include <algorithm>
#include <cmath>

#include "qprob/error.hpp"

namespace qprob {

PiecewiseLinear::PiecewiseLinear(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) {
    fail(ErrorCode::InvalidArgument,
         "piecewise-linear map needs at least two breakpoints");
  }
  for (size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1].t < breakpoints_[i].t)) {
      fail(ErrorCode::InvalidArgument,
           "piecewise-linear breakpoints must have strictly increasing "
           "abscissae");
    }
  }
  for (const auto& bp : breakpoints_) {
    if (!std::isfinite(bp.t) || !std::isfinite(bp.value)) {
      fail(ErrorCode::InvalidArgument,
           "piecewise-linear breakpoints must be finite");
    }
  }
}

double PiecewiseLinear::operator()(double t) const noexcept {
  if (t <= breakpoints_.front().t) return breakpoints_.front().value;
  if (t >= breakpoints_.back().t) return breakpoints_.back().value;
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](double lhs, const Breakpoint& rhs) { return lhs < rhs.t; });
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return lo.value + w * (hi.value - lo.value);
}

bool PiecewiseLinear::is_nondecreasing() const noexcept {
  for (size_t i = 1; i < breakpoints_.size(); ++i) {
    if (breakpoints_[i].value < breakpoints_[i - 1].value) return false;
  }
  return true;
}

double PiecewiseLinear::lipschitz_bound() const noexcept {
  double worst = 0.0;
  for (size_t i = 1; i < breakpoints_.size(); ++i) {
    const double slope =
        std::fabs(breakpoints_[i].value - breakpoints_[i - 1].value) /
        (breakpoints_[i].t - breakpoints_[i - 1].t);
    worst = std::max(worst, slope);
  }
  return worst;
}

namespace {

Observable make_node(ObsKind kind, std::vector<Observable> args) {
  Observable::Node node;
  node.kind = kind;
  node.args = std::move(args);
  return Observable::wrap(std::move(node));
}

}  // namespace

Observable coord_x() { return make_node(ObsKind::CoordX, {}); }

Observable coord_y() { return make_node(ObsKind::CoordY, {}); }

Observable constant(double value) {
  if (!std::isfinite(value)) {
    fail(ErrorCode::InvalidArgument, "constants must be finite");
  }
  Observable::Node node;
  node.kind = ObsKind::Constant;
  node.constant = value;
  return Observable::wrap(std::move(node));
}

Observable operator+(const Observable& a, const Observable& b) {
  return make_node(ObsKind::Add, {a, b});
}

Observable operator-(const Observable& a, const Observable& b) {
  return make_node(ObsKind::Sub, {a, b});
}

Observable operator*(const Observable& a, const Observable& b) {
  return make_node(ObsKind::Mul, {a, b});
}

Observable operator-(const Observable& a) {
  return make_node(ObsKind::Neg, {a});
}

Observable min_of(std::vector<Observable> args) {
  if (args.size() < 2) {
    fail(ErrorCode::InvalidArgument, "min needs at least two arguments");
  }
  return make_node(ObsKind::Min, std::move(args));
}

Observable max_of(std::vector<Observable> args) {
  if (args.size() < 2) {
    fail(ErrorCode::InvalidArgument, "max needs at least two arguments");
  }
  return make_node(ObsKind::Max, std::move(args));
}

Observable abs_of(const Observable& a) {
  return make_node(ObsKind::Abs, {a});
}

Observable clamp_of(const Observable& a, double lo, double hi) {
  if (!(lo <= hi)) {
    fail(ErrorCode::InvalidArgument, "clamp needs lo <= hi");
  }
  Observable::Node node;
  node.kind = ObsKind::Clamp;
  node.args = {a};
  node.lo = lo;
  node.hi = hi;
  return Observable::wrap(std::move(node));
}

Observable pow_of(const Observable& a, int exponent) {
  if (exponent < 1) {
    fail(ErrorCode::InvalidArgument, "exponent must be a positive integer");
  }
  Observable::Node node;
  node.kind = ObsKind::Power;
  node.args = {a};
  node.exponent = exponent;
  return Observable::wrap(std::move(node));
}

Observable compose_pwl(const Observable& a, PiecewiseLinear map) {
  Observable::Node node;
  node.kind = ObsKind::Pwl;
  node.args = {a};
  node.pwl = std::make_shared<const PiecewiseLinear>(std::move(map));
  return Observable::wrap(std::move(node));
}

Observable urysohn_ratio(const Observable& y, const Observable& z) {
  return make_node(ObsKind::UrysohnRatio, {y, z});
}

double evaluate_at(const Observable& obs, double x, double y) {
  const auto& node = obs.node();
  switch (node.kind) {
    case ObsKind::CoordX:
      return x;
    case ObsKind::CoordY:
      return y;
    case ObsKind::Constant:
      return node.constant;
    case ObsKind::Add:
      return evaluate_at(node.args[0], x, y) + evaluate_at(node.args[1], x, y);
    case ObsKind::Sub:
      return evaluate_at(node.args[0], x, y) - evaluate_at(node.args[1], x, y);
    case ObsKind::Mul:
      return evaluate_at(node.args[0], x, y) * evaluate_at(node.args[1], x, y);
    case ObsKind::Neg:
      return -evaluate_at(node.args[0], x, y);
    case ObsKind::Min: {
      double v = evaluate_at(node.args[0], x, y);
      for (size_t i = 1; i < node.args.size(); ++i) {
        v = std::min(v, evaluate_at(node.args[i], x, y));
      }
      return v;
    }
    case ObsKind::Max: {
      double v = evaluate_at(node.args[0], x, y);
      for (size_t i = 1; i < node.args.size(); ++i) {
        v = std::max(v, evaluate_at(node.args[i], x, y));
      }
      return v;
    }
    case ObsKind::Abs:
      return std::fabs(evaluate_at(node.args[0], x, y));
    case ObsKind::Clamp:
      return std::clamp(evaluate_at(node.args[0], x, y), node.lo, node.hi);
    case ObsKind::Power: {
      const double base = evaluate_at(node.args[0], x, y);
      double v = 1.0;
      for (int i = 0; i < node.exponent; ++i) v *= base;
      return v;
    }
    case ObsKind::Pwl:
      return (*node.pwl)(evaluate_at(node.args[0], x, y));
    case ObsKind::UrysohnRatio: {
      const double num = evaluate_at(node.args[0], x, y);
      const double den = num + evaluate_at(node.args[1], x, y);
      return den > 0.0 ? num / den : 0.0;
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt observable node");
}

namespace {

void evaluate_into(const Observable& obs, const GridDomain& domain,
                   std::vector<double>& out) {
  const auto& node = obs.node();
  const int64_t count = domain.cell_count();
  const int32_t n = domain.resolution();
  switch (node.kind) {
    case ObsKind::CoordX: {
      out.resize(size_t(count));
      for (int32_t iy = 0; iy < n; ++iy) {
        for (int32_t ix = 0; ix < n; ++ix) {
          out[size_t(domain.cell_index(ix, iy))] = domain.cell_center_x(ix);
        }
      }
      return;
    }
    case ObsKind::CoordY: {
      out.resize(size_t(count));
      for (int32_t iy = 0; iy < n; ++iy) {
        const double cy = domain.cell_center_y(iy);
        for (int32_t ix = 0; ix < n; ++ix) {
          out[size_t(domain.cell_index(ix, iy))] = cy;
        }
      }
      return;
    }
    case ObsKind::Constant:
      out.assign(size_t(count), node.constant);
      return;
    case ObsKind::Add:
    case ObsKind::Sub:
    case ObsKind::Mul: {
      std::vector<double> rhs;
      evaluate_into(node.args[0], domain, out);
      evaluate_into(node.args[1], domain, rhs);
      if (node.kind == ObsKind::Add) {
        for (size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
      } else if (node.kind == ObsKind::Sub) {
        for (size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
      } else {
        for (size_t i = 0; i < out.size(); ++i) out[i] *= rhs[i];
      }
      return;
    }
    case ObsKind::Neg:
      evaluate_into(node.args[0], domain, out);
      for (double& v : out) v = -v;
      return;
    case ObsKind::Min:
    case ObsKind::Max: {
      evaluate_into(node.args[0], domain, out);
      std::vector<double> rhs;
      for (size_t k = 1; k < node.args.size(); ++k) {
        evaluate_into(node.args[k], domain, rhs);
        if (node.kind == ObsKind::Min) {
          for (size_t i = 0; i < out.size(); ++i) {
            out[i] = std::min(out[i], rhs[i]);
          }
        } else {
          for (size_t i = 0; i < out.size(); ++i) {
            out[i] = std::max(out[i], rhs[i]);
          }
        }
      }
      return;
    }
    case ObsKind::Abs:
      evaluate_into(node.args[0], domain, out);
      for (double& v : out) v = std::fabs(v);
      return;
    case ObsKind::Clamp:
      evaluate_into(node.args[0], domain, out);
      for (double& v : out) v = std::clamp(v, node.lo, node.hi);
      return;
    case ObsKind::Power:
      evaluate_into(node.args[0], domain, out);
      for (double& v : out) {
        double acc = 1.0;
        for (int i = 0; i < node.exponent; ++i) acc *= v;
        v = acc;
      }
      return;
    case ObsKind::Pwl:
      evaluate_into(node.args[0], domain, out);
      for (double& v : out) v = (*node.pwl)(v);
      return;
    case ObsKind::UrysohnRatio: {
      std::vector<double> rhs;
      evaluate_into(node.args[0], domain, out);
      evaluate_into(node.args[1], domain, rhs);
      for (size_t i = 0; i < out.size(); ++i) {
        const double den = out[i] + rhs[i];
        out[i] = den > 0.0 ? out[i] / den : 0.0;
      }
      return;
    }
  }
  fail(ErrorCode::InvalidArgument, "corrupt observable node");
}

}  // namespace

ScalarField evaluate(const Observable& obs, const GridDomain& domain) {
  std::vector<double> values;
  evaluate_into(obs, domain, values);
  return ScalarField(domain, std::move(values));
}

}  // namespace qprob
