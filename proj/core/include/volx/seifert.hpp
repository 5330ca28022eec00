#pragma once

#include <string>
#include <utility>
#include <vector>

#include "volx/rational.hpp"
#include "volx/report.hpp"

namespace volx {

/// Invariants (g; (alpha_1, beta_1), ..., (alpha_n, beta_n)) of an oriented
/// Seifert fibration. Pairs must be coprime with alpha != 0; pairs with
/// alpha = 1 are allowed (no singular fibre, but they shift the Euler class).
/// Everything in this module is exact rational arithmetic; no floating point.
struct SeifertData {
  int genus = 0;
  std::vector<std::pair<BigInt, BigInt>> pairs;
};

SeifertData make_seifert_data(int genus, std::vector<std::pair<BigInt, BigInt>> pairs);

/// Closed oriented 2-orbifold: genus plus cone orders, each >= 2.
struct Orbifold2D {
  int genus = 0;
  std::vector<BigInt> cone_orders;
};

Orbifold2D make_orbifold(int genus, std::vector<BigInt> cone_orders);

/// An isolated zero of a vector field on an orbifold. cone_order = 1 encodes
/// a zero at a smooth point; k is the integer describing the zero, index
/// 1/alpha - k.
struct ZeroDatum {
  BigInt cone_order = 1;
  BigInt k = 0;
};

/// e = -sum beta_i / alpha_i.
Rational euler_number(const SeifertData& s);

/// Volume of the fibre field with regular period 1: minus the Euler number.
Rational vol_from_seifert(const SeifertData& s);

/// m = lcm |alpha_i| (1 for the empty list) together with m * vol, which is
/// always an integer; a non-integer product is an internal invariant failure.
struct IntegralityCertificate {
  BigInt m;
  Rational product;
};
IntegralityCertificate integrality_certificate(const SeifertData& s);

/// chi_orb = 2 - 2g - n + sum 1/alpha_i.
Rational chi_orb(const Orbifold2D& o);

/// Seifert invariants (g, (1, 2g-2), (alpha_i, alpha_i - 1), ...) of the unit
/// tangent bundle of the orbifold.
SeifertData unit_tangent_bundle_invariants(const Orbifold2D& o);

/// Index 1/alpha - k of a zero; alpha = 1 is a smooth point (index 1 - k).
Rational orbifold_index(const BigInt& alpha, const BigInt& k);

/// Compares sum of indices with chi_orb, exactly. Every cone point of the
/// orbifold must appear exactly once among the zeros (cone points are forced
/// zeros); smooth zeros are unrestricted.
CheckReport poincare_hopf_check(const Orbifold2D& o, const std::vector<ZeroDatum>& zeros);

/// Determinant condition alpha*beta' - alpha'*beta == 1 for gluing data.
bool gluing_check(const BigInt& alpha, const BigInt& beta, const BigInt& alpha_p,
                  const BigInt& beta_p);

// JSON encodings used by the CLI:
//   SeifertData  {"genus": int, "pairs": [[a, b], ...]}
//   Orbifold2D   {"genus": int, "cones": [int, ...]}
//   Rational     {"num": string, "den": string}
SeifertData seifert_from_json(const std::string& text);
std::string to_json(const SeifertData& s);
Orbifold2D orbifold_from_json(const std::string& text);
std::string to_json(const Orbifold2D& o);
std::string rational_to_json(const Rational& q);

}  // namespace volx
