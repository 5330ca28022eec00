#include "volx/report.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace volx {

using nlohmann::ordered_json;

std::string to_fraction_string(const Rational& q) {
  const BigInt n = rational_num(q);
  const BigInt d = rational_den(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

double CheckValue::as_double() const {
  if (kind == Kind::Real) return real;
  return static_cast<double>(exact);
}

std::string CheckValue::to_string() const {
  if (kind == Kind::Real) {
    ordered_json j = real;
    return j.dump();
  }
  return to_fraction_string(exact);
}

namespace {

bool evaluate_pass(const CheckValue& computed, const CheckValue& expected, double tolerance) {
  if (computed.kind == CheckValue::Kind::Exact && expected.kind == CheckValue::Kind::Exact &&
      tolerance == 0.0)
    return computed.exact == expected.exact;
  const double diff = std::fabs(computed.as_double() - expected.as_double());
  return diff <= tolerance;
}

}  // namespace

CheckReport make_check(std::string name, CheckValue computed, CheckValue expected,
                       double tolerance, std::string detail) {
  CheckReport r;
  r.name = std::move(name);
  r.computed = std::move(computed);
  r.expected = std::move(expected);
  r.tolerance = tolerance;
  r.passed = evaluate_pass(r.computed, r.expected, tolerance);
  r.detail = std::move(detail);
  return r;
}

CheckReport make_check(std::string name, double computed, double expected, double tolerance,
                       std::string detail) {
  return make_check(std::move(name), CheckValue::of(computed), CheckValue::of(expected),
                    tolerance, std::move(detail));
}

CheckReport make_check(std::string name, const Rational& computed, const Rational& expected,
                       std::string detail) {
  return make_check(std::move(name), CheckValue::of(computed), CheckValue::of(expected), 0.0,
                    std::move(detail));
}

std::string to_json(const CheckReport& r) {
  ordered_json j;
  j["name"] = r.name;
  if (r.computed.kind == CheckValue::Kind::Exact)
    j["computed"] = to_fraction_string(r.computed.exact);
  else
    j["computed"] = r.computed.real;
  if (r.expected.kind == CheckValue::Kind::Exact)
    j["expected"] = to_fraction_string(r.expected.exact);
  else
    j["expected"] = r.expected.real;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  return j.dump();
}

}  // namespace volx
