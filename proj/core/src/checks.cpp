#include "volx/checks.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "volx/errors.hpp"

namespace volx {

ChartPtr cube_chart(int dim) {
  static std::map<int, ChartPtr> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(dim);
  if (it == cache.end()) {
    std::vector<std::string> names;
    std::vector<Interval> bounds;
    for (int i = 0; i < dim; ++i) {
      names.push_back("x" + std::to_string(i));
      bounds.push_back(Interval{-1.0, 1.0});
    }
    it = cache.emplace(dim, make_chart("cube" + std::to_string(dim), names, bounds)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// random polynomial forms
// ---------------------------------------------------------------------------

namespace {

struct Monomial {
  double coeff;
  std::vector<int> exponents;
};

struct Polynomial {
  std::vector<Monomial> terms;

  double eval(std::span<const double> x) const {
    double s = 0.0;
    for (const Monomial& m : terms) {
      double t = m.coeff;
      for (std::size_t i = 0; i < m.exponents.size(); ++i)
        for (int e = 0; e < m.exponents[i]; ++e) t *= x[i];
      s += t;
    }
    return s;
  }

  double partial(int j, std::span<const double> x) const {
    double s = 0.0;
    for (const Monomial& m : terms) {
      const int ej = m.exponents[static_cast<std::size_t>(j)];
      if (ej == 0) continue;
      double t = m.coeff * ej;
      for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        const int e = m.exponents[i] - (static_cast<int>(i) == j ? 1 : 0);
        for (int k = 0; k < e; ++k) t *= x[i];
      }
      s += t;
    }
    return s;
  }
};

Polynomial random_polynomial(const RandomFormSpec& spec, std::uint64_t stream,
                             std::uint64_t* counter) {
  Polynomial p;
  const int n_terms = 3;
  for (int t = 0; t < n_terms; ++t) {
    Monomial m;
    m.exponents.assign(static_cast<std::size_t>(spec.dim), 0);
    int budget = spec.polynomial_degree;
    for (int i = 0; i < spec.dim; ++i) {
      const double u = uniform01(spec.seed ^ stream, (*counter)++);
      const int e = static_cast<int>(u * (budget + 1));
      m.exponents[static_cast<std::size_t>(i)] = e;
      budget -= e;
    }
    const double u = uniform01(spec.seed ^ stream, (*counter)++);
    const int span = spec.coeff_hi - spec.coeff_lo + 1;
    m.coeff = static_cast<double>(spec.coeff_lo + static_cast<int>(u * span));
    p.terms.push_back(std::move(m));
  }
  return p;
}

}  // namespace

KForm random_polynomial_form(const RandomFormSpec& spec) {
  ChartPtr chart = cube_chart(spec.dim);
  const int n_coeffs =
      static_cast<int>(increasing_indices(spec.dim, spec.degree).size());
  std::vector<Polynomial> polys;
  std::uint64_t counter = 0;
  for (int c = 0; c < n_coeffs; ++c)
    polys.push_back(random_polynomial(spec, 0x9e3779b9ULL * (c + 1), &counter));
  const int dim = spec.dim;
  return KForm(
      chart, spec.degree,
      [polys, n_coeffs](std::span<const double> x) {
        std::vector<double> out(static_cast<std::size_t>(n_coeffs));
        for (int c = 0; c < n_coeffs; ++c) out[static_cast<std::size_t>(c)] = polys[c].eval(x);
        return out;
      },
      [polys, n_coeffs, dim](std::span<const double> x) {
        Matrix g(n_coeffs, dim);
        for (int c = 0; c < n_coeffs; ++c)
          for (int j = 0; j < dim; ++j) g(c, j) = polys[c].partial(j, x);
        return g;
      });
}

// ---------------------------------------------------------------------------
// identity residual
// ---------------------------------------------------------------------------

namespace {

KForm wedge_power(const KForm& w, int n, ChartPtr chart) {
  KForm acc = constant_form(chart, 0, {1.0});
  for (int i = 0; i < n; ++i) acc = wedge(acc, w);
  return acc;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

ResidualScan abbondandolo_scan(const KForm& alpha, const KForm& beta, int n,
                               const std::vector<Point>& points) {
  const ChartPtr chart = alpha.chart();
  const int dim = chart->dim();
  if (dim < 2 * n + 1)
    throw DegreeError("abbondandolo_scan: chart dimension < 2n + 1");

  const KForm da = ext_d(alpha), db = ext_d(beta);

  KForm lhs = wedge(alpha, wedge_power(da, n, chart)) - wedge(beta, wedge_power(db, n, chart));

  KForm mixed_sum = zero_form(chart, 2 * n);
  for (int j = 0; j <= n; ++j)
    mixed_sum = mixed_sum + wedge(wedge_power(da, j, chart), wedge_power(db, n - j, chart));
  KForm rhs = wedge(alpha - beta, mixed_sum);

  if (n >= 1) {
    KForm corr_sum = zero_form(chart, 2 * (n - 1));
    for (int j = 0; j <= n - 1; ++j)
      corr_sum =
          corr_sum + wedge(wedge_power(da, j, chart), wedge_power(db, n - 1 - j, chart));
    rhs = rhs + ext_d(wedge(wedge(alpha, beta), corr_sum));
  }

  ResidualScan scan;
  for (const Point& p : points) {
    const std::vector<double> l = lhs.coeffs_at(p.x);
    const std::vector<double> r = rhs.coeffs_at(p.x);
    for (std::size_t i = 0; i < l.size(); ++i)
      scan.residual = std::max(scan.residual, std::fabs(l[i] - r[i]));
    scan.scale = std::max({scan.scale, max_abs(l), max_abs(r)});
  }
  return scan;
}

double abbondandolo_residual(const KForm& alpha, const KForm& beta, int n,
                             const std::vector<Point>& points) {
  return abbondandolo_scan(alpha, beta, n, points).residual;
}

CheckReport abbondandolo_suite(int dim, int n, int n_seeds, int n_points, double rel_tolerance) {
  double worst = 0.0;
  for (int s = 0; s < n_seeds; ++s) {
    RandomFormSpec sa{dim, 1, 2, -5, 5, static_cast<std::uint64_t>(2 * s + 1)};
    RandomFormSpec sb{dim, 1, 2, -5, 5, static_cast<std::uint64_t>(2 * s + 2)};
    const KForm alpha = random_polynomial_form(sa);
    const KForm beta = random_polynomial_form(sb);
    const std::vector<Point> pts =
        sample_interior_points(cube_chart(dim), n_points, static_cast<std::uint64_t>(s), 1e-3);
    const ResidualScan scan = abbondandolo_scan(alpha, beta, n, pts);
    if (scan.scale > 0.0) worst = std::max(worst, scan.residual / scan.scale);
  }
  std::ostringstream detail;
  detail << "dim " << dim << ", n " << n << ", " << n_seeds << " seeds x " << n_points
         << " points; worst residual relative to coefficient scale";
  return make_check("identity_residual_dim" + std::to_string(dim) + "_n" + std::to_string(n),
                    worst, 0.0, rel_tolerance, detail.str());
}

// ---------------------------------------------------------------------------
// volume invariance
// ---------------------------------------------------------------------------

CheckReport volume_invariance(const KForm& alpha, const KForm& beta, const VectorFieldRepr& X,
                              const ParametrizedChain& chain, int n, const QuadratureSpec& spec,
                              double sample_margin) {
  const ChartPtr chart = alpha.chart();
  const std::vector<Point> pts = sample_interior_points(chart, 200, 1234, sample_margin);

  auto check_pre = [&](const KForm& form, const char* name) {
    const KForm fx = interior(X, form);
    for (const Point& p : pts) {
      const double v = fx.coeffs_at(p.x)[0];
      if (std::fabs(v - 1.0) > 1e-8)
        throw std::invalid_argument(std::string("volume_invariance: hypothesis ") + name +
                                    "(X) = 1 fails (value " + std::to_string(v) + ")");
    }
    const double d = max_coeff_norm(interior(X, ext_d(form)), pts);
    if (d > 1e-8)
      throw std::invalid_argument(std::string("volume_invariance: hypothesis i_X d") + name +
                                  " = 0 fails (residual " + std::to_string(d) + ")");
  };
  check_pre(alpha, "alpha");
  check_pre(beta, "beta");

  const KForm wa = wedge(alpha, wedge_power(ext_d(alpha), n, chart));
  const KForm wb = wedge(beta, wedge_power(ext_d(beta), n, chart));
  const IntegrationResult ia = integrate_form(wa, chain, spec);
  const IntegrationResult ib = integrate_form(wb, chain, spec);

  const double tol = ia.error_estimate + ib.error_estimate +
                     1e-9 * (std::fabs(ia.value) + std::fabs(ib.value));
  std::ostringstream detail;
  detail << "int alpha^(d alpha)^" << n << " vs int beta^(d beta)^" << n
         << "; error estimates " << ia.error_estimate << ", " << ib.error_estimate;
  return make_check("volume_invariance", ia.value, ib.value, tol, detail.str());
}

// ---------------------------------------------------------------------------
// basic forms and the pairing
// ---------------------------------------------------------------------------

CheckReport basic_form_check(const KForm& gamma, const VectorFieldRepr& X,
                             const std::vector<Point>& points,
                             std::optional<double> tolerance) {
  const double tol = tolerance.value_or(gamma.has_analytic_grads() ? 1e-8 : 1e-5);
  double worst = 0.0;
  if (gamma.degree() >= 1) worst = max_coeff_norm(interior(X, gamma), points);
  const KForm dg = ext_d(gamma);
  if (!dg.trivially_zero()) worst = std::max(worst, max_coeff_norm(interior(X, dg), points));
  return make_check("basic_form_check", worst, 0.0, tol,
                    "max(|i_X gamma|, |i_X d gamma|) over sample points");
}

CheckReport pairing_invariance(const KForm& alpha, const KForm& sigma, const KForm& tau,
                               const VectorFieldRepr& X, const ParametrizedChain& chain,
                               const QuadratureSpec& spec) {
  const std::vector<Point> pts = sample_interior_points(alpha.chart(), 100, 99, 1e-3);
  if (!basic_form_check(tau, X, pts).passed)
    throw std::invalid_argument("pairing_invariance: tau is not basic");
  if (!basic_form_check(sigma, X, pts).passed)
    throw std::invalid_argument("pairing_invariance: sigma is not basic");

  const IntegrationResult lhs = integrate_form(wedge(alpha, sigma), chain, spec);
  const IntegrationResult rhs = integrate_form(wedge(alpha, sigma + ext_d(tau)), chain, spec);
  const double tol = lhs.error_estimate + rhs.error_estimate +
                     1e-9 * (std::fabs(lhs.value) + std::fabs(rhs.value)) + 1e-12;
  std::ostringstream detail;
  detail << "int alpha^sigma vs int alpha^(sigma + d tau); error estimates "
         << lhs.error_estimate << ", " << rhs.error_estimate;
  return make_check("pairing_invariance", lhs.value, rhs.value, tol, detail.str());
}

CheckReport geodesibility_residual(const KForm& alpha, const VectorFieldRepr& X,
                                   const std::vector<Point>& points,
                                   std::optional<double> tolerance) {
  const double tol = tolerance.value_or(alpha.has_analytic_grads() ? 1e-8 : 1e-5);
  const KForm ax = interior(X, alpha);
  double worst = 0.0;
  for (const Point& p : points)
    worst = std::max(worst, std::fabs(ax.coeffs_at(p.x)[0] - 1.0));
  worst = std::max(worst, max_coeff_norm(interior(X, ext_d(alpha)), points));
  return make_check("geodesibility_residual", worst, 0.0, tol,
                    "max(|alpha(X) - 1|, |i_X d alpha|) over sample points");
}

// ---------------------------------------------------------------------------
// Cartan structures
// ---------------------------------------------------------------------------

CheckReport cartan_residual(const KForm& omega1, const KForm& omega2,
                            const std::vector<Point>& points, double tolerance,
                            double witness_floor) {
  if (omega1.chart()->dim() != 3)
    throw DegreeError("cartan_residual: needs a 3-dimensional chart");
  const KForm e1 = wedge(omega1, ext_d(omega1));
  const KForm e2 = wedge(omega2, ext_d(omega2));
  const KForm m12 = wedge(omega1, ext_d(omega2));
  const KForm m21 = wedge(omega2, ext_d(omega1));

  double worst = 0.0;
  double witness = std::numeric_limits<double>::infinity();
  for (const Point& p : points) {
    const double v1 = e1.coeffs_at(p.x)[0];
    const double v2 = e2.coeffs_at(p.x)[0];
    const double c12 = m12.coeffs_at(p.x)[0];
    const double c21 = m21.coeffs_at(p.x)[0];
    worst = std::max(worst, std::fabs(v1 - v2) + std::fabs(c12) + std::fabs(c21));
    witness = std::min(witness, std::fabs(v1));
  }

  std::ostringstream detail;
  detail << "structure-equation residual; nonvanishing witness min|w1^dw1| = " << witness;
  double computed = worst;
  if (!(witness > witness_floor)) {
    computed += 1.0;
    detail << " (below floor " << witness_floor << ": pair is not a contact pair)";
  }
  return make_check("cartan_residual", computed, 0.0, tolerance, detail.str());
}

std::vector<double> cartan_solve_alpha(const KForm& omega1, const KForm& omega2,
                                       std::span<const double> p,
                                       std::vector<double>* singular_values) {
  const KForm dw1 = ext_d(omega1), dw2 = ext_d(omega2);
  const std::vector<double> w1 = omega1.coeffs_at(p);
  const std::vector<double> w2 = omega2.coeffs_at(p);
  const std::vector<double> d1 = dw1.coeffs_at(p);
  const std::vector<double> d2 = dw2.coeffs_at(p);

  // 2-form components are indexed by (0,1), (0,2), (1,2)
  static const int pair_idx[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Matrix A(6, 3);
  std::vector<double> rhs(6);
  for (int r = 0; r < 3; ++r) {
    const int i = pair_idx[r][0], j = pair_idx[r][1];
    // (w2 ^ alpha)_{ij} = w2_i alpha_j - w2_j alpha_i
    A(r, j) += w2[static_cast<std::size_t>(i)];
    A(r, i) -= w2[static_cast<std::size_t>(j)];
    rhs[static_cast<std::size_t>(r)] = d1[static_cast<std::size_t>(r)];
    // (alpha ^ w1)_{ij} = alpha_i w1_j - alpha_j w1_i
    A(r + 3, i) += w1[static_cast<std::size_t>(j)];
    A(r + 3, j) -= w1[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(r + 3)] = d2[static_cast<std::size_t>(r)];
  }

  std::vector<double> local_sv;
  std::vector<double>* sv = singular_values ? singular_values : &local_sv;
  try {
    return solve_least_squares(A, rhs, sv);
  } catch (const SingularMatrix&) {
    // the singular values were computed before the normal-matrix inversion failed
    std::ostringstream os;
    os << "cartan_solve_alpha: rank-deficient system; singular values:";
    for (double s : *sv) os << ' ' << s;
    throw SingularMatrix(os.str());
  }
}

KForm cartan_alpha_form(const KForm& omega1, const KForm& omega2) {
  KForm w1 = omega1, w2 = omega2;
  return KForm(omega1.chart(), 1, [w1, w2](std::span<const double> x) {
    return cartan_solve_alpha(w1, w2, x);
  });
}

VectorFieldRepr cartan_kernel_field(const KForm& omega1, const KForm& omega2) {
  KForm w1 = omega1, w2 = omega2;
  return VectorFieldRepr{omega1.chart(), [w1, w2](std::span<const double> x) {
                           const std::vector<double> a = w1.coeffs_at(x);
                           const std::vector<double> b = w2.coeffs_at(x);
                           // the kernel direction is the cross product of the
                           // two coefficient covectors
                           std::vector<double> k{a[1] * b[2] - a[2] * b[1],
                                                 a[2] * b[0] - a[0] * b[2],
                                                 a[0] * b[1] - a[1] * b[0]};
                           const std::vector<double> al = cartan_solve_alpha(w1, w2, x);
                           const double pairing = al[0] * k[0] + al[1] * k[1] + al[2] * k[2];
                           for (double& c : k) c /= pairing;
                           return k;
                         }};
}

CheckReport bott_relation(const KForm& omega1, const KForm& omega2, const VectorFieldRepr& X,
                          const ParametrizedChain& chain, const QuadratureSpec& spec,
                          double tolerance) {
  const ChartPtr chart = omega1.chart();
  const std::vector<Point> pts = sample_interior_points(chart, 100, 7, 1e-2);
  if (!cartan_residual(omega1, omega2, pts).passed)
    throw std::invalid_argument("bott_relation: the pair fails the Cartan structure residual");

  const KForm alpha = cartan_alpha_form(omega1, omega2);
  {
    const KForm ax = interior(X, alpha);
    for (const Point& p : pts)
      if (std::fabs(ax.coeffs_at(p.x)[0] - 1.0) > 1e-6)
        throw std::invalid_argument("bott_relation: X is not normalized by alpha(X) = 1");
  }

  // complex 1-form alpha_c = i alpha as a (real, imaginary) pair
  const KForm re = zero_form(chart, 1);
  const KForm im = alpha;
  const KForm re_part = wedge(re, ext_d(re)) - wedge(im, ext_d(im));
  const KForm im_part = wedge(re, ext_d(im)) + wedge(im, ext_d(re));

  const IntegrationResult bott_re = integrate_form(re_part, chain, spec);
  const IntegrationResult bott_im = integrate_form(im_part, chain, spec);
  const IntegrationResult vol = integrate_form(wedge(alpha, ext_d(alpha)), chain, spec);

  std::ostringstream detail;
  detail << "Re int alpha_c ^ d alpha_c vs -vol_X; imaginary part " << bott_im.value
         << " (0 expected); vol_X = " << vol.value;
  const double tol =
      tolerance + bott_re.error_estimate + vol.error_estimate + std::fabs(bott_im.value);
  return make_check("bott_relation", bott_re.value, -vol.value, tol, detail.str());
}

IntegrationResult return_time_volume(const ScalarField& tau, const KForm& sigma,
                                     const ParametrizedChain& chain,
                                     const QuadratureSpec& spec) {
  if (sigma.degree() != 2) throw DegreeError("return_time_volume: sigma must be a 2-form");
  if (chain.k != 2) throw DegreeError("return_time_volume: chain must be 2-dimensional");
  return integrate_form(tau * sigma, chain, spec);
}

}  // namespace volx
