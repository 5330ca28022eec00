#include "volx/riemannian.hpp"

#include <cmath>
#include <sstream>

#include "volx/errors.hpp"

namespace volx {

void validate_metric(const MetricField& g, const std::vector<Point>& points) {
  for (const Point& p : points) {
    const Matrix m = g.g(p.x);
    double scale = 0.0;
    for (double v : m.a) {
      if (!std::isfinite(v)) throw NumericError("validate_metric: non-finite entry");
      scale = std::max(scale, std::fabs(v));
    }
    for (int i = 0; i < m.rows; ++i)
      for (int j = i + 1; j < m.cols; ++j)
        if (std::fabs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, scale))
          throw NumericError("validate_metric: matrix not symmetric to rounding");
    if (!is_positive_definite(m))
      throw NumericError("validate_metric: matrix not positive definite at a sample point");
  }
}

KForm flat(const MetricField& g, const VectorFieldRepr& X) {
  if (g.chart.get() != X.chart.get())
    throw ChartMismatch("flat: metric and field live on different charts");
  MatrixFn gm = g.g;
  VectorFn xc = X.components;
  return KForm(g.chart, 1, [gm, xc](std::span<const double> p) {
    const Matrix m = gm(p);
    return m * xc(p);
  });
}

MetricField pullback_metric(const SmoothMap& F, const MetricField& g, bool* rank_warning) {
  if (F.target.get() != g.chart.get())
    throw ChartMismatch("pullback_metric: map target and metric charts differ");
  SmoothMap cf = F;
  MatrixFn gm = g.g;
  return MetricField{F.source, [cf, gm, rank_warning](std::span<const double> p) {
                       const Matrix jac = cf.jacobian_at(p);
                       const std::vector<double> q = cf.components(p);
                       const Matrix res = jac.transposed() * gm(q) * jac;
                       if (rank_warning && !is_positive_definite(res)) *rank_warning = true;
                       return res;
                     }};
}

Christoffel christoffel(const MetricField& g, std::span<const double> p) {
  const int n = g.chart->dim();
  const Matrix g0 = g.g(p);
  const Matrix ginv = inverse(g0);  // throws SingularMatrix beyond cond 1e12

  // dg[l](i,j) = d_l g_ij by central differences
  std::vector<Matrix> dg(static_cast<std::size_t>(n));
  std::vector<double> pt(p.begin(), p.end());
  for (int l = 0; l < n; ++l) {
    const double h = fd_step(pt[static_cast<std::size_t>(l)]);
    const double xl = pt[static_cast<std::size_t>(l)];
    pt[static_cast<std::size_t>(l)] = xl + h;
    const Matrix up = g.g(pt);
    pt[static_cast<std::size_t>(l)] = xl - h;
    const Matrix dn = g.g(pt);
    pt[static_cast<std::size_t>(l)] = xl;
    Matrix d(n, n);
    for (std::size_t t = 0; t < d.a.size(); ++t) d.a[t] = (up.a[t] - dn.a[t]) / (2.0 * h);
    dg[static_cast<std::size_t>(l)] = std::move(d);
  }

  Christoffel gamma;
  gamma.dim = n;
  gamma.v.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) +
                             dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
        gamma.at(k, i, j) = 0.5 * s;
        gamma.at(k, j, i) = gamma.at(k, i, j);  // symmetric by construction, exactly
      }
  return gamma;
}

std::vector<double> cov_accel(const MetricField& g, const VectorFieldRepr& X,
                              std::span<const double> p) {
  if (g.chart.get() != X.chart.get())
    throw ChartMismatch("cov_accel: metric and field live on different charts");
  const int n = g.chart->dim();
  const std::vector<double> xv = X.components(p);
  const Matrix jac = fd_jacobian(X.components, p, n);
  const Christoffel gamma = christoffel(g, p);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += xv[static_cast<std::size_t>(i)] * jac(k, i);
      for (int j = 0; j < n; ++j)
        s += gamma(k, i, j) * xv[static_cast<std::size_t>(i)] * xv[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

double metric_norm(const MetricField& g, const VectorFieldRepr& X, std::span<const double> p) {
  const std::vector<double> xv = X.components(p);
  const Matrix m = g.g(p);
  double s = 0.0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      s += m(i, j) * xv[static_cast<std::size_t>(i)] * xv[static_cast<std::size_t>(j)];
  return std::sqrt(s);
}

double wadsley_residual(const MetricField& g, const VectorFieldRepr& X,
                        const std::vector<Point>& samples) {
  for (const Point& p : samples) {
    const double len = metric_norm(g, X, p.x);
    if (std::fabs(len - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "wadsley_residual: field is not unit length (|X| = " << len << " at a sample)";
      throw std::invalid_argument(os.str());
    }
  }
  const KForm alpha = flat(g, X);
  const KForm lie = lie_derivative(X, alpha);
  const int n = g.chart->dim();
  double worst = 0.0;
  for (const Point& p : samples) {
    const std::vector<double> lhs = lie.coeffs_at(p.x);
    const std::vector<double> acc = cov_accel(g, X, p.x);
    const Matrix m = g.g(p.x);
    const std::vector<double> rhs = m * acc;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, std::fabs(lhs[static_cast<std::size_t>(i)] -
                                        rhs[static_cast<std::size_t>(i)]));
  }
  return worst;
}

}  // namespace volx
