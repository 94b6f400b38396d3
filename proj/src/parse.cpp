#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "qprob/error.hpp"
#include "qprob/observable.hpp"

namespace qprob {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Observable run() {
    Observable obs = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      error("unexpected trailing input");
    }
    return obs;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError,
         what + " at position " + std::to_string(pos_) + " in \"" + text_ +
             "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(uint8_t(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) {
      error(std::string("expected '") + c + "'");
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Observable parse_expr() {
    Observable lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        lhs = lhs + parse_term();
      } else if (consume('-')) {
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Observable parse_term() {
    Observable lhs = parse_factor();
    while (consume('*')) {
      lhs = lhs * parse_factor();
    }
    return lhs;
  }

  Observable parse_factor() {
    Observable base = parse_unary();
    if (consume('^')) {
      base = pow_of(base, parse_positive_int());
    }
    return base;
  }

  Observable parse_unary() {
    if (consume('-')) {
      return -parse_unary();
    }
    return parse_atom();
  }

  Observable parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Observable inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(uint8_t(c)) || c == '.') {
      return constant(parse_number());
    }
    if (std::isalpha(uint8_t(c))) {
      const std::string word = parse_word();
      if (word == "x") return coord_x();
      if (word == "y") return coord_y();
      if (word == "min" || word == "max") return parse_min_max(word == "min");
      if (word == "abs") return parse_abs();
      if (word == "clamp") return parse_clamp();
      if (word == "pwl") return parse_pwl();
      error("unknown name \"" + word + "\"");
    }
    error("expected a value");
  }

  Observable parse_min_max(bool is_min) {
    expect('(');
    std::vector<Observable> args;
    args.push_back(parse_expr());
    while (consume(',')) {
      args.push_back(parse_expr());
    }
    expect(')');
    if (args.size() < 2) {
      error(std::string(is_min ? "min" : "max") +
            " needs at least two arguments");
    }
    return is_min ? min_of(std::move(args)) : max_of(std::move(args));
  }

  Observable parse_abs() {
    expect('(');
    Observable inner = parse_expr();
    expect(')');
    return abs_of(inner);
  }

  Observable parse_clamp() {
    expect('(');
    Observable inner = parse_expr();
    expect(',');
    const double lo = parse_signed_number();
    expect(',');
    const double hi = parse_signed_number();
    expect(')');
    if (!(lo <= hi)) {
      error("clamp bounds must satisfy lo <= hi");
    }
    return clamp_of(inner, lo, hi);
  }

  Observable parse_pwl() {
    expect('(');
    Observable inner = parse_expr();
    std::vector<PiecewiseLinear::Breakpoint> breakpoints;
    while (consume(';')) {
      const double t = parse_signed_number();
      expect(',');
      const double v = parse_signed_number();
      breakpoints.push_back({t, v});
    }
    expect(')');
    if (breakpoints.size() < 2) {
      error("pwl needs at least two \"; t, v\" breakpoints");
    }
    for (size_t i = 1; i < breakpoints.size(); ++i) {
      if (!(breakpoints[i - 1].t < breakpoints[i].t)) {
        error("pwl breakpoints must have strictly increasing abscissae");
      }
    }
    return compose_pwl(inner, PiecewiseLinear(std::move(breakpoints)));
  }

  std::string parse_word() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(uint8_t(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  double parse_signed_number() {
    const bool negated = consume('-');
    const double v = parse_number();
    return negated ? -v : v;
  }

  double parse_number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    if (!std::isdigit(uint8_t(*begin)) && *begin != '.') {
      error("expected a number");
    }
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
      error("expected a number");
    }
    pos_ += size_t(end - begin);
    return v;
  }

  int parse_positive_int() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(uint8_t(text_[pos_]))) ++pos_;
    if (pos_ == start) {
      error("expected a positive integer exponent");
    }
    const long v = std::strtol(text_.c_str() + start, nullptr, 10);
    if (v < 1 || v > 64) {
      error("exponent must be in 1..64");
    }
    return int(v);
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Observable parse_observable(const std::string& text) {
  return Parser(text).run();
}

}  // namespace qprob
