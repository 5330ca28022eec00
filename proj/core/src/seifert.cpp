#include "volx/seifert.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace volx {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;
using nlohmann::ordered_json;

SeifertData make_seifert_data(int genus, std::vector<std::pair<BigInt, BigInt>> pairs) {
  if (genus < 0) throw std::invalid_argument("SeifertData: genus must be >= 0");
  for (const auto& [a, b] : pairs) {
    if (a == 0) throw std::invalid_argument("SeifertData: alpha must be nonzero");
    if (gcd(abs(a), abs(b)) != 1)
      throw std::invalid_argument("SeifertData: pair (" + a.str() + ", " + b.str() +
                                  ") is not coprime");
  }
  return SeifertData{genus, std::move(pairs)};
}

Orbifold2D make_orbifold(int genus, std::vector<BigInt> cone_orders) {
  if (genus < 0) throw std::invalid_argument("Orbifold2D: genus must be >= 0");
  for (const BigInt& a : cone_orders)
    if (a < 2) throw std::invalid_argument("Orbifold2D: cone orders must be >= 2");
  return Orbifold2D{genus, std::move(cone_orders)};
}

Rational euler_number(const SeifertData& s) {
  Rational e = 0;
  for (const auto& [a, b] : s.pairs) e -= make_rational(b, a);
  return e;
}

Rational vol_from_seifert(const SeifertData& s) { return -euler_number(s); }

IntegralityCertificate integrality_certificate(const SeifertData& s) {
  BigInt m = 1;
  for (const auto& [a, b] : s.pairs) m = lcm(m, abs(a));
  const Rational product = Rational(m) * vol_from_seifert(s);
  if (rational_den(product) != 1)
    throw std::logic_error("integrality_certificate: product is not an integer");
  return IntegralityCertificate{m, product};
}

Rational chi_orb(const Orbifold2D& o) {
  Rational chi = 2 - 2 * o.genus - static_cast<int>(o.cone_orders.size());
  for (const BigInt& a : o.cone_orders) chi += Rational(1, a);
  return chi;
}

SeifertData unit_tangent_bundle_invariants(const Orbifold2D& o) {
  std::vector<std::pair<BigInt, BigInt>> pairs;
  pairs.emplace_back(1, 2 * o.genus - 2);
  for (const BigInt& a : o.cone_orders) pairs.emplace_back(a, a - 1);
  return make_seifert_data(o.genus, std::move(pairs));
}

Rational orbifold_index(const BigInt& alpha, const BigInt& k) {
  if (alpha < 1) throw std::invalid_argument("orbifold_index: alpha must be >= 1");
  return Rational(1, alpha) - Rational(k);
}

CheckReport poincare_hopf_check(const Orbifold2D& o, const std::vector<ZeroDatum>& zeros) {
  // cone points are forced zeros: match them up exactly once each
  std::vector<BigInt> remaining = o.cone_orders;
  for (const ZeroDatum& z : zeros) {
    if (z.cone_order == 1) continue;
    auto it = std::find(remaining.begin(), remaining.end(), z.cone_order);
    if (it == remaining.end())
      throw std::invalid_argument("poincare_hopf_check: zero cites cone order " +
                                  z.cone_order.str() + " not present (or already used)");
    remaining.erase(it);
  }
  if (!remaining.empty())
    throw std::invalid_argument("poincare_hopf_check: cone point of order " +
                                remaining.front().str() + " has no zero attached");

  Rational sum = 0;
  for (const ZeroDatum& z : zeros) sum += orbifold_index(z.cone_order, z.k);
  return make_check("poincare_hopf_index_sum", sum, chi_orb(o),
                    "sum of zero indices vs orbifold Euler characteristic");
}

bool gluing_check(const BigInt& alpha, const BigInt& beta, const BigInt& alpha_p,
                  const BigInt& beta_p) {
  return alpha * beta_p - alpha_p * beta == 1;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

SeifertData seifert_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  std::vector<std::pair<BigInt, BigInt>> pairs;
  for (const auto& p : j.at("pairs"))
    pairs.emplace_back(BigInt(p.at(0).get<long long>()), BigInt(p.at(1).get<long long>()));
  return make_seifert_data(j.at("genus").get<int>(), std::move(pairs));
}

std::string to_json(const SeifertData& s) {
  ordered_json j;
  j["genus"] = s.genus;
  auto arr = ordered_json::array();
  for (const auto& [a, b] : s.pairs)
    arr.push_back({static_cast<long long>(a), static_cast<long long>(b)});
  j["pairs"] = arr;
  return j.dump();
}

Orbifold2D orbifold_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  std::vector<BigInt> cones;
  for (const auto& c : j.at("cones")) cones.emplace_back(c.get<long long>());
  return make_orbifold(j.at("genus").get<int>(), std::move(cones));
}

std::string to_json(const Orbifold2D& o) {
  ordered_json j;
  j["genus"] = o.genus;
  auto arr = ordered_json::array();
  for (const BigInt& c : o.cone_orders) arr.push_back(static_cast<long long>(c));
  j["cones"] = arr;
  return j.dump();
}

std::string rational_to_json(const Rational& q) {
  ordered_json j;
  j["num"] = rational_num(q).str();
  j["den"] = rational_den(q).str();
  return j.dump();
}

}  // namespace volx
