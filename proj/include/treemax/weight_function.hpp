#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treemax {

// Symmetric real-valued weight on positive integer degree pairs. A catalogue
// entry can be negated, which flips the sign of every value and is tracked in
// the name as a ":neg" suffix.
class WeightFunction {
 public:
  WeightFunction(std::string base_name, std::function<double(int, int)> eval, bool negated = false)
      : base_name_(std::move(base_name)), eval_(std::move(eval)), negated_(negated) {}

  double operator()(int x, int y) const {
    const double value = eval_(x, y);
    return negated_ ? -value : value;
  }

  const std::string& base_name() const { return base_name_; }
  std::string name() const { return negated_ ? base_name_ + ":neg" : base_name_; }
  bool negated() const { return negated_; }

  WeightFunction negate() const { return WeightFunction(base_name_, eval_, !negated_); }

 private:
  std::string base_name_;
  std::function<double(int, int)> eval_;
  bool negated_ = false;
};

// The built-in index functions. Expressions are written symmetrically so that
// eval(x,y) and eval(y,x) are bit-identical.
inline const std::vector<WeightFunction>& catalogue() {
  static const std::vector<WeightFunction> entries = {
      {"randic", [](int x, int y) { return 1.0 / std::sqrt(static_cast<double>(x) * y); }},
      {"second_zagreb", [](int x, int y) { return static_cast<double>(x) * y; }},
      {"modified_second_zagreb", [](int x, int y) { return 1.0 / (static_cast<double>(x) * y); }},
      {"sum_connectivity", [](int x, int y) { return 1.0 / std::sqrt(static_cast<double>(x + y)); }},
      {"harmonic", [](int x, int y) { return 2.0 / (x + y); }},
      {"sombor", [](int x, int y) {
         return std::sqrt(static_cast<double>(x) * x + static_cast<double>(y) * y);
       }},
  };
  return entries;
}

// Looks up a catalogue entry by name; the suffix ":neg" selects its negation.
inline std::optional<WeightFunction> find_weight_function(std::string_view name) {
  bool negated = false;
  if (name.ends_with(":neg")) {
    negated = true;
    name.remove_suffix(4);
  }
  for (const WeightFunction& f : catalogue()) {
    if (f.base_name() == name) return negated ? f.negate() : f;
  }
  return std::nullopt;
}

struct ConditionCounterexample {
  int x = 0, y = 0, a = 0, b = 0;
  double f_xa = 0, f_yb = 0, f_ya = 0, f_xb = 0;

  double lhs() const { return f_xa + f_yb; }
  double rhs() const { return f_ya + f_xb; }
};

struct ConditionReport {
  bool strict = false;
  bool holds = false;
  int delta = 0;
  std::optional<ConditionCounterexample> counterexample;
};

// Absolute slack for comparing double-valued weight sums; far below the
// smallest true margin of any catalogue entry at desk-scale deltas.
inline constexpr double kConditionTolerance = 1e-12;

namespace detail {

inline bool exchange_ok(const WeightFunction& f, int x, int y, int a, int b, bool strict,
                        ConditionCounterexample& cex) {
  const double f_xa = f(x, a), f_yb = f(y, b), f_ya = f(y, a), f_xb = f(x, b);
  const double gap = (f_xa + f_yb) - (f_ya + f_xb);
  const bool ok = strict ? gap > kConditionTolerance : gap >= -kConditionTolerance;
  if (!ok) cex = {x, y, a, b, f_xa, f_yb, f_ya, f_xb};
  return ok;
}

}  // namespace detail

// Exhaustively tests F(x,a) + F(y,b) >= F(y,a) + F(x,b) over 1 <= y <= x <= delta
// and 1 <= b <= a <= delta (strict: > with x > y, a > b). Reports the first
// failing quadruple in lexicographic (x,y,a,b) order.
inline ConditionReport check_condition(const WeightFunction& f, int delta, bool strict) {
  if (delta < 2) throw std::invalid_argument("delta must be at least 2");
  ConditionReport report{strict, true, delta, std::nullopt};
  ConditionCounterexample cex;
  for (int x = 1; x <= delta; ++x) {
    for (int y = 1; y <= (strict ? x - 1 : x); ++y) {
      for (int a = 1; a <= delta; ++a) {
        for (int b = 1; b <= (strict ? a - 1 : a); ++b) {
          if (!detail::exchange_ok(f, x, y, a, b, strict, cex)) {
            report.holds = false;
            report.counterexample = cex;
            return report;
          }
        }
      }
    }
  }
  return report;
}

// Same test restricted to adjacent quadruples x = y+1, a = b+1. By telescoping,
// its verdict must agree with the exhaustive check on the same range.
inline ConditionReport check_condition_adjacent(const WeightFunction& f, int delta, bool strict) {
  if (delta < 2) throw std::invalid_argument("delta must be at least 2");
  ConditionReport report{strict, true, delta, std::nullopt};
  ConditionCounterexample cex;
  for (int y = 1; y < delta; ++y) {
    for (int b = 1; b < delta; ++b) {
      if (!detail::exchange_ok(f, y + 1, y, b + 1, b, strict, cex)) {
        report.holds = false;
        report.counterexample = cex;
        return report;
      }
    }
  }
  return report;
}

}  // namespace treemax
