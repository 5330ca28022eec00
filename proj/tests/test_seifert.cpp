#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "volx/seifert.hpp"

using namespace volx;

namespace {

SeifertData hopf_invariants() { return make_seifert_data(0, {{BigInt(1), BigInt(1)}}); }

SeifertData poincare_like() {
  return make_seifert_data(
      0, {{BigInt(2), BigInt(1)}, {BigInt(3), BigInt(1)}, {BigInt(5), BigInt(1)}});
}

}  // namespace

TEST_CASE("euler number") {
  CHECK(euler_number(hopf_invariants()) == Rational(-1));
  CHECK(euler_number(make_seifert_data(7, {})) == Rational(0));
  CHECK(euler_number(poincare_like()) == Rational(-31, 30));
}

TEST_CASE("volume is minus the euler number") {
  CHECK(vol_from_seifert(hopf_invariants()) == Rational(1));
  CHECK(vol_from_seifert(make_seifert_data(3, {})) == Rational(0));
  CHECK(vol_from_seifert(poincare_like()) == Rational(31, 30));
}

TEST_CASE("integrality certificate") {
  SUBCASE("poincare-like: m = 30, product = 31") {
    const IntegralityCertificate cert = integrality_certificate(poincare_like());
    CHECK(cert.m == 30);
    CHECK(cert.product == Rational(31));
  }
  SUBCASE("hopf: m = 1, product = 1") {
    const IntegralityCertificate cert = integrality_certificate(hopf_invariants());
    CHECK(cert.m == 1);
    CHECK(cert.product == Rational(1));
  }
  SUBCASE("no pairs: m = 1, product = 0") {
    const IntegralityCertificate cert = integrality_certificate(make_seifert_data(2, {}));
    CHECK(cert.m == 1);
    CHECK(cert.product == Rational(0));
  }
}

TEST_CASE("chi_orb") {
  CHECK(chi_orb(make_orbifold(0, {})) == Rational(2));
  CHECK(chi_orb(make_orbifold(0, {BigInt(2), BigInt(3), BigInt(5)})) == Rational(1, 30));
  CHECK(chi_orb(make_orbifold(1, {})) == Rational(0));
}

TEST_CASE("unit tangent bundle invariants") {
  SUBCASE("sphere") {
    const SeifertData s = unit_tangent_bundle_invariants(make_orbifold(0, {}));
    CHECK(s.genus == 0);
    REQUIRE(s.pairs.size() == 1);
    CHECK(s.pairs[0].first == 1);
    CHECK(s.pairs[0].second == -2);
  }
  SUBCASE("spindle (2,3)") {
    const SeifertData s =
        unit_tangent_bundle_invariants(make_orbifold(0, {BigInt(2), BigInt(3)}));
    REQUIRE(s.pairs.size() == 3);
    CHECK(s.pairs[0] == std::pair<BigInt, BigInt>{1, -2});
    CHECK(s.pairs[1] == std::pair<BigInt, BigInt>{2, 1});
    CHECK(s.pairs[2] == std::pair<BigInt, BigInt>{3, 2});
  }
  SUBCASE("genus 2 surface") {
    const SeifertData s = unit_tangent_bundle_invariants(make_orbifold(2, {}));
    CHECK(s.genus == 2);
    REQUIRE(s.pairs.size() == 1);
    CHECK(s.pairs[0] == std::pair<BigInt, BigInt>{1, 2});
  }
}

TEST_CASE("orbifold index") {
  CHECK(orbifold_index(1, 0) == Rational(1));
  CHECK(orbifold_index(3, 0) == Rational(1, 3));
  CHECK(orbifold_index(2, 1) == Rational(-1, 2));
  CHECK(orbifold_index(1, 2) == Rational(-1));  // smooth convention 1 - k
  CHECK_THROWS_AS(orbifold_index(0, 0), std::invalid_argument);
}

TEST_CASE("poincare-hopf bookkeeping") {
  SUBCASE("sphere with two rotationally symmetric zeros") {
    const CheckReport r =
        poincare_hopf_check(make_orbifold(0, {}), {{BigInt(1), BigInt(0)}, {BigInt(1), BigInt(0)}});
    CHECK(r.passed);
    CHECK(r.computed.exact == Rational(2));
  }
  SUBCASE("spindle (2,3) with cone zeros k=0") {
    const CheckReport r = poincare_hopf_check(make_orbifold(0, {BigInt(2), BigInt(3)}),
                                              {{BigInt(2), BigInt(0)}, {BigInt(3), BigInt(0)}});
    CHECK(r.passed);
    CHECK(r.computed.exact == Rational(5, 6));
  }
  SUBCASE("torus with no zeros") {
    const CheckReport r = poincare_hopf_check(make_orbifold(1, {}), {});
    CHECK(r.passed);
    CHECK(r.computed.exact == Rational(0));
  }
  SUBCASE("a failing configuration still reports") {
    const CheckReport r =
        poincare_hopf_check(make_orbifold(0, {}), {{BigInt(1), BigInt(0)}});
    CHECK_FALSE(r.passed);  // one source on a sphere: index 1 != 2
  }
  SUBCASE("cone point without a zero is an error") {
    CHECK_THROWS_AS(poincare_hopf_check(make_orbifold(0, {BigInt(2)}), {}),
                    std::invalid_argument);
  }
  SUBCASE("zero citing an absent cone order is an error") {
    CHECK_THROWS_AS(
        poincare_hopf_check(make_orbifold(0, {}), {{BigInt(5), BigInt(0)}}),
        std::invalid_argument);
  }
}

TEST_CASE("gluing determinant condition") {
  CHECK(gluing_check(1, 0, 0, 1));
  for (long a : {1L, 2L, 5L, 9L}) CHECK(gluing_check(BigInt(a), BigInt(a - 1), 1, 1));
  CHECK(gluing_check(2, 1, 1, 1));
  CHECK_FALSE(gluing_check(2, 1, 1, 0));
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(make_seifert_data(0, {{BigInt(4), BigInt(2)}}), std::invalid_argument);
  CHECK_THROWS_AS(make_seifert_data(0, {{BigInt(0), BigInt(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(make_seifert_data(-1, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_orbifold(0, {BigInt(1)}), std::invalid_argument);
  CHECK_NOTHROW(make_seifert_data(0, {{BigInt(1), BigInt(7)}}));      // alpha = 1 allowed here
  CHECK_NOTHROW(make_seifert_data(0, {{BigInt(-3), BigInt(2)}}));     // negative alpha allowed
}

TEST_CASE("euler number invariances") {
  std::mt19937_64 rng(2024);
  auto random_pairs = [&rng](int n) {
    std::vector<std::pair<BigInt, BigInt>> pairs;
    for (int i = 0; i < n; ++i) {
      long a = 1 + static_cast<long>(rng() % 12);
      long b = static_cast<long>(rng() % 25) - 12;
      const long g = std::gcd(a, std::abs(b));
      if (g > 1) {
        a /= g;
        b /= g;
      }
      pairs.emplace_back(a, b);
    }
    return pairs;
  };

  for (int trial = 0; trial < 200; ++trial) {
    auto pairs = random_pairs(1 + static_cast<int>(rng() % 6));
    const SeifertData s = make_seifert_data(static_cast<int>(rng() % 4), pairs);
    const Rational e = euler_number(s);

    // permutation invariance
    auto shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(euler_number(make_seifert_data(s.genus, shuffled)) == e);

    // (a, b) -> (-a, -b) invariance
    auto negated = pairs;
    for (auto& [a, b] : negated) {
      a = -a;
      b = -b;
    }
    CHECK(euler_number(make_seifert_data(s.genus, negated)) == e);
  }
}

TEST_CASE("cross-check: euler of the unit tangent bundle equals chi_orb") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int genus = static_cast<int>(rng() % 6);
    const int n_cones = static_cast<int>(rng() % 7);
    std::vector<BigInt> cones;
    for (int i = 0; i < n_cones; ++i) cones.emplace_back(2 + static_cast<long>(rng() % 11));
    const Orbifold2D o = make_orbifold(genus, cones);
    CHECK(euler_number(unit_tangent_bundle_invariants(o)) == chi_orb(o));
  }
}

TEST_CASE("integrality holds for random data with large lcm") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::pair<BigInt, BigInt>> pairs;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      long a = 1 + static_cast<long>(rng() % 50);
      long b = static_cast<long>(rng() % 101) - 50;
      const long g = std::gcd(a, std::abs(b));
      if (g > 1) {
        a /= g;
        b /= g;
      }
      pairs.emplace_back(a, b);
    }
    const IntegralityCertificate cert =
        integrality_certificate(make_seifert_data(0, pairs));
    CHECK(rational_den(cert.product) == 1);
  }
}

TEST_CASE("json round trips") {
  const SeifertData s = seifert_from_json(R"({"genus": 0, "pairs": [[1, 1], [2, -3]]})");
  CHECK(s.genus == 0);
  REQUIRE(s.pairs.size() == 2);
  CHECK(s.pairs[1] == std::pair<BigInt, BigInt>{2, -3});
  const SeifertData back = seifert_from_json(to_json(s));
  CHECK(back.pairs == s.pairs);

  const Orbifold2D o = orbifold_from_json(R"({"genus": 2, "cones": [2, 3, 5]})");
  CHECK(o.genus == 2);
  CHECK(o.cone_orders.size() == 3);
  const Orbifold2D oback = orbifold_from_json(to_json(o));
  CHECK(oback.cone_orders == o.cone_orders);

  CHECK(rational_to_json(Rational(-31, 30)) == R"({"num":"-31","den":"30"})");
  CHECK(to_fraction_string(Rational(-31, 30)) == "-31/30");
  CHECK(to_fraction_string(Rational(5)) == "5");
  CHECK(rational_from_string("-31/30") == Rational(-31, 30));
  CHECK(rational_from_string("17") == Rational(17));
}

TEST_CASE("arbitrary precision is real") {
  // lcm of the first primes overflows 64-bit quickly
  std::vector<std::pair<BigInt, BigInt>> pairs;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L,
                 53L, 59L, 61L, 67L, 71L})
    pairs.emplace_back(p, 1);
  const IntegralityCertificate cert = integrality_certificate(make_seifert_data(0, pairs));
  CHECK(cert.m > BigInt("18446744073709551615"));  // beyond uint64
  CHECK(rational_den(cert.product) == 1);
}
