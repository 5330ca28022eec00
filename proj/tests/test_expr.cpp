#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "volx/errors.hpp"
#include "volx/expr.hpp"

using namespace volx;
using namespace volx::expr;

TEST_CASE("parse and evaluate") {
  CHECK(eval(parse("1 - 0.5*u"), 1.0) == doctest::Approx(0.5));
  CHECK(eval(parse("2+3*4"), 0.0) == 14.0);
  CHECK(eval(parse("(2+3)*4"), 0.0) == 20.0);
  CHECK(eval(parse("2^3^2"), 0.0) == 512.0);  // right associative
  CHECK(eval(parse("-2^2"), 0.0) == -4.0);    // ^ binds tighter than unary minus
  CHECK(eval(parse("2*-3"), 0.0) == -6.0);
  CHECK(eval(parse("sin(0)"), 0.0) == 0.0);
  CHECK(eval(parse("cos(0)"), 0.0) == 1.0);
  CHECK(eval(parse("exp(1)"), 0.0) == doctest::Approx(std::exp(1.0)));
  CHECK(eval(parse("sin(r)/2"), 3.0) == doctest::Approx(std::sin(3.0) / 2.0));
  CHECK(eval(parse("1e-3 + 2E2"), 0.0) == doctest::Approx(200.001));
  CHECK(eval(parse("  1 +\t2 "), 0.0) == 3.0);  // whitespace-insensitive
}

TEST_CASE("syntax errors carry byte offsets") {
  auto offset_of = [](const char* text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.offset;
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("1 + ") == 4);
  CHECK(offset_of("1 + %") == 4);
  CHECK(offset_of("sin 1") == 4);      // missing '(' after the function name
  CHECK(offset_of("1 + foo") == 4);    // unknown identifier, rewound to its start
  CHECK(offset_of("(1 + 2") == 6);     // missing close paren
  CHECK(offset_of("1 2") == 2);        // trailing input
}

TEST_CASE("evaluation errors are diagnosed") {
  CHECK_THROWS_AS(eval(parse("1/u"), 0.0), NumericError);
  CHECK_THROWS_AS(eval(parse("u^(-1)"), 0.0), NumericError);
  CHECK(eval(parse("1/u"), 2.0) == 0.5);
}

TEST_CASE("symbolic derivative") {
  SUBCASE("sin(r)/2 differentiates to cos(r)/2") {
    const ExprPtr d = derivative(parse("sin(r)/2"));
    CHECK(print(d) == "cos(r)/2");
    CHECK(eval(d, 0.0) == 0.5);
  }

  SUBCASE("polynomials") {
    const ExprPtr d = derivative(parse("1 + u + u^2"));
    CHECK(eval(d, 0.0) == doctest::Approx(1.0));
    CHECK(eval(d, 3.0) == doctest::Approx(7.0));
  }

  SUBCASE("chain rule through compositions") {
    const ExprPtr d = derivative(parse("exp(sin(u))"));
    const double u = 0.7;
    CHECK(eval(d, u) == doctest::Approx(std::exp(std::sin(u)) * std::cos(u)).epsilon(1e-12));
  }

  SUBCASE("quotient rule") {
    const ExprPtr d = derivative(parse("u/(1+u)"));
    const double u = 0.5;
    CHECK(eval(d, u) == doctest::Approx(1.0 / ((1.0 + u) * (1.0 + u))).epsilon(1e-12));
  }

  SUBCASE("second derivatives for profiles") {
    const ExprPtr f = parse("sin(r)*(0.5 - r/18.849555921538759)");  // 6 pi
    const ExprPtr d2 = derivative(derivative(f));
    // compare against central differences of the first derivative
    const ExprPtr d1 = derivative(f);
    const double r = 1.1, h = 1e-5;
    const double fd = (eval(d1, r + h) - eval(d1, r - h)) / (2.0 * h);
    CHECK(eval(d2, r) == doctest::Approx(fd).epsilon(1e-8));
  }

  SUBCASE("non-constant exponents are rejected") {
    CHECK_THROWS_AS(derivative(parse("u^u")), NumericError);
  }
}

TEST_CASE("print/parse round trip on randomized trees") {
  // deterministic recursive generator over the full grammar
  std::uint64_t state = 12345;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::uint32_t>(state >> 33);
  };
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    if (depth == 0) {
      switch (next() % 3) {
        case 0: return "u";
        case 1: return std::to_string(next() % 100);
        default: return std::to_string(next() % 97) + "." + std::to_string(next() % 100);
      }
    }
    switch (next() % 8) {
      case 0: return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
      case 1: return "(" + gen(depth - 1) + "-" + gen(depth - 1) + ")";
      case 2: return "(" + gen(depth - 1) + "*" + gen(depth - 1) + ")";
      case 3: return "(" + gen(depth - 1) + "/" + gen(depth - 1) + ")";
      case 4: return "(" + gen(depth - 1) + ")^2";
      case 5: return "sin(" + gen(depth - 1) + ")";
      case 6: return "cos(" + gen(depth - 1) + ")";
      default: return "-" + gen(depth - 1);
    }
  };

  for (int trial = 0; trial < 200; ++trial) {
    const std::string text = gen(3);
    ExprPtr tree;
    try {
      tree = parse(text);
    } catch (const ParseError&) {
      continue;  // e.g. constant-folded division by zero is fine to skip
    }
    const std::string printed = print(tree);
    const ExprPtr reparsed = parse(printed);
    CHECK(equal(tree, reparsed));
    CHECK(print(reparsed) == printed);  // printing is a fixed point
  }
}

TEST_CASE("variable name detection") {
  CHECK(variable_name(parse("1 + u^2")) == "u");
  CHECK(variable_name(parse("sin(r)/2")) == "r");
  CHECK(variable_name(parse("3.5")).empty());
}
