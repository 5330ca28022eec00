#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "volx/catalog.hpp"
#include "volx/checks.hpp"
#include "volx/errors.hpp"
#include "volx/forms.hpp"

using namespace volx;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

ChartPtr torus3() {
  static const ChartPtr chart =
      make_chart("t3", {"x", "y", "z"},
                 {Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}});
  return chart;
}
}  // namespace

TEST_CASE("multi-index tables") {
  CHECK(increasing_indices(3, 0).size() == 1);
  CHECK(increasing_indices(3, 1).size() == 3);
  CHECK(increasing_indices(3, 2).size() == 3);
  CHECK(increasing_indices(3, 3).size() == 1);
  CHECK(increasing_indices(3, 4).empty());
  CHECK(increasing_indices(5, 2).size() == 10);
  CHECK(increasing_indices(5, 2)[0] == std::vector<int>{0, 1});
  CHECK(increasing_indices(5, 2)[9] == std::vector<int>{3, 4});
  CHECK(multi_index_position(5, {0, 2}) == 1);
  CHECK(shuffle_sign({0}, {1}) == 1);
  CHECK(shuffle_sign({1}, {0}) == -1);
  CHECK(shuffle_sign({1, 3}, {0, 2}) == -1);
}

TEST_CASE("wedge basis cases") {
  ChartPtr chart = torus3();
  const KForm dx = coordinate_differential(chart, 0);
  const KForm dy = coordinate_differential(chart, 1);

  const KForm zero2 = wedge(dx, dx);
  const KForm dxdy = wedge(dx, dy);
  const std::vector<double> p{1.0, 2.0, 3.0};
  CHECK(zero2.coeffs_at(p) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(dxdy.coeffs_at(p) == std::vector<double>{1.0, 0.0, 0.0});

  CHECK_THROWS_AS(wedge(dxdy, dxdy), DegreeError);
  ChartPtr other = cube_chart(3);
  CHECK_THROWS_AS(wedge(dx, coordinate_differential(other, 0)), ChartMismatch);
}

TEST_CASE("graded commutativity is bit-exact") {
  for (int dim : {3, 5}) {
    ChartPtr chart = cube_chart(dim);
    const std::vector<Point> pts = sample_interior_points(chart, 10, 21, 1e-3);
    for (int ka = 0; ka <= 2; ++ka) {
      for (int kb = 0; kb <= 2; ++kb) {
        if (ka + kb > dim) continue;
        const KForm a = random_polynomial_form({dim, ka, 3, -5, 5, 77});
        const KForm b = random_polynomial_form({dim, kb, 3, -5, 5, 78});
        const KForm ab = wedge(a, b);
        const KForm ba = wedge(b, a);
        const double sign = (ka % 2 == 1 && kb % 2 == 1) ? -1.0 : 1.0;
        for (const Point& p : pts) {
          const std::vector<double> va = ab.coeffs_at(p.x);
          const std::vector<double> vb = ba.coeffs_at(p.x);
          for (std::size_t i = 0; i < va.size(); ++i) {
            CHECK(va[i] == sign * vb[i]);  // exact, no tolerance
          }
        }
      }
    }
  }
}

TEST_CASE("hopf alpha ^ d alpha has the hand-expanded coefficient") {
  const HopfBundle hopf = hopf_bundle();
  const KForm vol3 = wedge(hopf.alpha, ext_d(hopf.alpha));
  const std::vector<Point> pts = sample_interior_points(hopf.chart, 50, 3, 1e-3);
  for (const Point& p : pts) {
    const double expected = -std::sin(2.0 * p.x[0]) / (4.0 * kPi * kPi);
    CHECK(vol3.coeffs_at(p.x)[0] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("exterior derivative basics") {
  ChartPtr chart = disc_chart();

  SUBCASE("constant 0-form") {
    const KForm f = constant_form(chart, 0, {4.0});
    const KForm df = ext_d(f);
    CHECK(df.coeffs_at(std::vector<double>{0.5, 1.0, 0.5}) ==
          std::vector<double>{0.0, 0.0, 0.0});
  }

  SUBCASE("d(r^2/2 dphi) = r dr ^ dphi") {
    const KForm lambda = make_kform(chart, 1, [](std::span<const double> p) {
      return std::vector<double>{0.0, 0.5 * p[0] * p[0], 0.0};
    });
    const KForm w = ext_d(lambda);
    // 2-form components ordered (r,phi), (r,theta), (phi,theta)
    const std::vector<double> c = w.coeffs_at(std::vector<double>{0.37, 1.0, 0.2});
    CHECK(c[0] == doctest::Approx(0.37).epsilon(1e-10));
    CHECK(std::fabs(c[1]) < 1e-12);
    CHECK(std::fabs(c[2]) < 1e-12);
  }

  SUBCASE("d of a top form is the flagged zero form") {
    const KForm top = constant_form(chart, 3, {1.0});
    const KForm d_top = ext_d(top);
    CHECK(d_top.trivially_zero());
    CHECK(d_top.degree() == 4);
  }
}

TEST_CASE("d . d = 0 on random polynomial forms") {
  for (int dim : {3, 5}) {
    ChartPtr chart = cube_chart(dim);
    const std::vector<Point> pts = sample_interior_points(chart, 100, 5, 1e-3);
    for (int k : {0, 1, 2}) {
      const KForm w = random_polynomial_form({dim, k, 3, -5, 5, 1234});
      const KForm ddw = ext_d(ext_d(w));
      // analytic gradients feed the first d; the second is finite differences
      CHECK(max_coeff_norm(ddw, pts) < 1e-9);
    }
  }
}

TEST_CASE("d . d with finite-difference gradients stays under C h_fd") {
  ChartPtr chart = cube_chart(3);
  const KForm w = random_polynomial_form({3, 1, 2, -5, 5, 4321});
  const KForm plain(chart, 1, [w](std::span<const double> x) { return w.coeffs_at(x); });
  const KForm ddw = ext_d(ext_d(plain));  // both derivatives by central differences
  const std::vector<Point> pts = sample_interior_points(chart, 50, 15, 1e-3);
  CHECK(max_coeff_norm(ddw, pts) < 10.0 * fd_step(1.0));
}

TEST_CASE("Leibniz rule residual stays under 10 h_fd^2 per unit scale") {
  const int dim = 3;
  ChartPtr chart = cube_chart(dim);
  const KForm a = random_polynomial_form({dim, 1, 2, -5, 5, 404});
  const KForm b = random_polynomial_form({dim, 1, 2, -5, 5, 405});
  const KForm lhs = ext_d(wedge(a, b));
  const KForm rhs = wedge(ext_d(a), b) - wedge(a, ext_d(b));
  const std::vector<Point> pts = sample_interior_points(chart, 50, 6, 1e-3);
  double residual = 0.0, scale = 0.0;
  for (const Point& p : pts) {
    const std::vector<double> l = lhs.coeffs_at(p.x);
    const std::vector<double> r = rhs.coeffs_at(p.x);
    for (std::size_t i = 0; i < l.size(); ++i) {
      residual = std::max(residual, std::fabs(l[i] - r[i]));
      scale = std::max({scale, std::fabs(l[i]), std::fabs(r[i])});
    }
  }
  const double h = fd_step(1.0);
  CHECK(residual <= 10.0 * h * h * std::max(1.0, scale));
}

TEST_CASE("interior product") {
  const HopfBundle hopf = hopf_bundle();
  const std::vector<Point> pts = sample_interior_points(hopf.chart, 100, 8, 1e-3);

  SUBCASE("normalization alpha(X) = 1") {
    const KForm ax = interior(hopf.field, hopf.alpha);
    for (const Point& p : pts) CHECK(ax.coeffs_at(p.x)[0] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("basis contraction i_dtheta (dtheta ^ w) = w") {
    ChartPtr chart = torus3();
    const VectorFieldRepr dz{chart, [](std::span<const double>) {
                               return std::vector<double>{0.0, 0.0, 1.0};
                             }};
    // dz ^ (dx ^ dy) = dx ^ dy ^ dz; i_dz of it should give dx ^ dy back
    const KForm dx = coordinate_differential(chart, 0);
    const KForm dy = coordinate_differential(chart, 1);
    const KForm dzf = coordinate_differential(chart, 2);
    const KForm three = wedge(dzf, wedge(dx, dy));
    const KForm back = interior(dz, three);
    const std::vector<double> c = back.coeffs_at(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(c[0] == 1.0);  // (x,y) component
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 0.0);
  }

  SUBCASE("hopf connection form: i_X d alpha = 0") {
    const double worst = max_coeff_norm(interior(hopf.field, ext_d(hopf.alpha)), pts);
    CHECK(worst < 1e-9);
  }

  SUBCASE("degree 0 rejected") {
    const KForm f = constant_form(hopf.chart, 0, {1.0});
    CHECK_THROWS_AS(interior(hopf.field, f), DegreeError);
  }
}

TEST_CASE("i_X i_X = 0") {
  const int dim = 4;
  ChartPtr chart = cube_chart(dim);

  SUBCASE("exactly zero on integer configurations") {
    // integer components and coefficients keep every float op exact, so the
    // pairwise cancellation is exact as well
    const VectorFieldRepr X{chart, [](std::span<const double> x) {
                              return std::vector<double>{2.0, -3.0, 5.0, x[0] * 0 + 7.0};
                            }};
    const KForm w = random_polynomial_form({dim, 3, 2, -5, 5, 99});
    const KForm ww = interior(X, interior(X, w));
    const std::vector<double> at{1.0, -1.0, 1.0, 0.0};  // integer point
    for (double c : ww.coeffs_at(at)) CHECK(c == 0.0);
  }

  SUBCASE("tiny at generic points") {
    const VectorFieldRepr X{chart, [](std::span<const double> x) {
                              return std::vector<double>{x[1], -x[0], x[3] * x[2], 1.0};
                            }};
    const KForm w = random_polynomial_form({dim, 3, 2, -5, 5, 100});
    const KForm ww = interior(X, interior(X, w));
    const std::vector<Point> pts = sample_interior_points(chart, 50, 9, 1e-3);
    CHECK(max_coeff_norm(ww, pts) < 1e-12);
  }
}

TEST_CASE("lie derivative") {
  const HopfBundle hopf = hopf_bundle();
  const std::vector<Point> pts = sample_interior_points(hopf.chart, 50, 10, 1e-3);

  SUBCASE("degree 0: L_X f = X(f)") {
    ChartPtr chart = torus3();
    const VectorFieldRepr X{chart, [](std::span<const double> x) {
                              return std::vector<double>{1.0, x[0], 0.0};
                            }};
    const ScalarField f{chart,
                        [](std::span<const double> x) { return std::sin(x[0]) * x[1]; },
                        [](std::span<const double> x) {
                          return std::vector<double>{std::cos(x[0]) * x[1], std::sin(x[0]), 0.0};
                        }};
    const KForm lf = lie_derivative(X, as_kform(f));
    const std::vector<double> p{0.7, 1.3, 2.0};
    const double expected = std::cos(0.7) * 1.3 * 1.0 + std::sin(0.7) * 0.7;
    CHECK(lf.coeffs_at(p)[0] == doctest::Approx(expected).epsilon(1e-9));
  }

  SUBCASE("invariant connection form: L_X alpha = 0") {
    const KForm lie = lie_derivative(hopf.field, hopf.alpha);
    CHECK(max_coeff_norm(lie, pts) < 1e-9);
  }

  SUBCASE("constant coefficients: L_dx dy = 0") {
    ChartPtr chart = torus3();
    const VectorFieldRepr dx{chart, [](std::span<const double>) {
                               return std::vector<double>{1.0, 0.0, 0.0};
                             }};
    const KForm dy = coordinate_differential(chart, 1);
    const KForm lie = lie_derivative(dx, dy);
    const std::vector<Point> tp = sample_interior_points(chart, 20, 11, 1e-3);
    CHECK(max_coeff_norm(lie, tp) < 1e-12);
  }
}

TEST_CASE("pullback") {
  const HopfBundle hopf = hopf_bundle();

  SUBCASE("identity map") {
    const KForm pulled = pullback(identity_map(hopf.chart), hopf.alpha);
    const std::vector<Point> pts = sample_interior_points(hopf.chart, 20, 12, 1e-3);
    for (const Point& p : pts) {
      const std::vector<double> a = pulled.coeffs_at(p.x);
      const std::vector<double> b = hopf.alpha.coeffs_at(p.x);
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
    }
  }

  SUBCASE("hopf section curvature") {
    const SmoothMap section = hopf_section();
    const KForm pulled = pullback(section, ext_d(hopf.alpha));
    for (double r : {0.3, 1.0, 2.5, 10.0}) {
      const std::vector<double> p{r, 1.1};
      const double expected = r / (kPi * (1.0 + r * r) * (1.0 + r * r));
      CHECK(pulled.coeffs_at(p)[0] == doctest::Approx(expected).epsilon(1e-10));
    }
  }

  SUBCASE("degree beyond source dimension pulls back to zero") {
    const SmoothMap section = hopf_section();
    const KForm vol3 = wedge(hopf.alpha, ext_d(hopf.alpha));
    const KForm pulled = pullback(section, vol3);
    CHECK(pulled.trivially_zero());
  }

  SUBCASE("naturality: pullback commutes with d") {
    const SmoothMap section = hopf_section();
    const KForm lhs = pullback(section, ext_d(hopf.alpha));
    const KForm rhs = ext_d(pullback(section, hopf.alpha));
    for (double r : {0.4, 1.7, 3.0}) {
      const std::vector<double> p{r, 0.9};
      CHECK(lhs.coeffs_at(p)[0] == doctest::Approx(rhs.coeffs_at(p)[0]).epsilon(1e-7));
    }
  }
}

TEST_CASE("scalar field gradient consistency (order h^2)") {
  ChartPtr chart = torus3();
  const ScalarField f{chart,
                      [](std::span<const double> x) { return std::sin(x[0]) * std::cos(x[1]); },
                      [](std::span<const double> x) {
                        return std::vector<double>{std::cos(x[0]) * std::cos(x[1]),
                                                   -std::sin(x[0]) * std::sin(x[1]), 0.0};
                      }};
  const std::vector<Point> pts = sample_interior_points(chart, 50, 13, 1e-3);
  for (const Point& p : pts) {
    const std::vector<double> analytic = f.grad(p.x);
    const std::vector<double> fd = fd_gradient(f.eval, p.x);
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(analytic[i] - fd[i]) < 1e-9);
  }
}

TEST_CASE("chart construction guards") {
  CHECK_THROWS_AS(make_chart("bad", {"x"}, {Interval{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_chart("bad", {"x", "y"}, {Interval{0.0, 1.0}}), std::invalid_argument);
  ChartPtr chart = torus3();
  CHECK_THROWS_AS(make_point(chart, {7.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_kform(chart, 4, nullptr), DegreeError);
}
