#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace volx {

/// Arbitrary-precision integers and rationals. cpp_rational keeps values in
/// canonical form (reduced, positive denominator), which is exactly the
/// invariant the exact invariants below rely on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rational_den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// num/den with the sign moved to the numerator (cpp_rational's two-argument
/// constructor rejects negative denominators instead of normalizing).
inline Rational make_rational(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(std::move(num), std::move(den));
}

/// "n" when the denominator is 1, otherwise "n/d".
std::string to_fraction_string(const Rational& q);

/// Parses "n" or "n/d".
Rational rational_from_string(const std::string& text);

}  // namespace volx
