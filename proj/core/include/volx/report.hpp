#pragma once

#include <string>

#include "volx/rational.hpp"

namespace volx {

/// A number that is either an exact rational or a floating-point value.
/// Exact checks carry tolerance 0 and compare rationals; everything else
/// compares doubles.
struct CheckValue {
  enum class Kind { Real, Exact };
  Kind kind = Kind::Real;
  double real = 0.0;
  Rational exact;

  static CheckValue of(double v) { return CheckValue{Kind::Real, v, Rational(0)}; }
  static CheckValue of(const Rational& q) { return CheckValue{Kind::Exact, 0.0, q}; }

  double as_double() const;
  std::string to_string() const;
};

/// The universal output record: a named quantity, how it was computed, what
/// was expected, and whether the two agree within tolerance.
/// passed is always derived: |computed - expected| <= tolerance, with exact
/// rational equality when both sides are exact and tolerance is 0.
struct CheckReport {
  std::string name;
  CheckValue computed;
  CheckValue expected;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

CheckReport make_check(std::string name, CheckValue computed, CheckValue expected,
                       double tolerance, std::string detail = "");
CheckReport make_check(std::string name, double computed, double expected, double tolerance,
                       std::string detail = "");
CheckReport make_check(std::string name, const Rational& computed, const Rational& expected,
                       std::string detail = "");

/// {"name", "computed", "expected", "tolerance", "passed", "detail"}
std::string to_json(const CheckReport& r);

}  // namespace volx
