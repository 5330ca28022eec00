#pragma once

#include <vector>

#include "volx/forms.hpp"

namespace volx {

/// Riemannian metric on a chart, given pointwise as a symmetric positive
/// definite dim x dim matrix.
struct MetricField {
  ChartPtr chart;
  MatrixFn g;
};

/// Checks symmetry (to rounding) and positive definiteness of the metric at
/// the given sample points; throws NumericError on violation.
void validate_metric(const MetricField& g, const std::vector<Point>& points);

/// Index lowering: the 1-form g(X, .).
KForm flat(const MetricField& g, const VectorFieldRepr& X);

/// (F*g)(p) = J(p)^T g(F(p)) J(p). A rank-deficient Jacobian at a point makes
/// the result degenerate there but is not an error (F may be an embedding
/// into a higher-dimensional chart); `rank_warning`, when supplied, is set if
/// one is detected while evaluating.
MetricField pullback_metric(const SmoothMap& F, const MetricField& g,
                            bool* rank_warning = nullptr);

/// Christoffel symbols of the Levi-Civita connection at p, from central
/// finite differences of the metric. symbol(k, i, j) = Gamma^k_{ij}.
struct Christoffel {
  int dim = 0;
  std::vector<double> v;
  double operator()(int k, int i, int j) const {
    return v[static_cast<std::size_t>((k * dim + i) * dim + j)];
  }
  double& at(int k, int i, int j) {
    return v[static_cast<std::size_t>((k * dim + i) * dim + j)];
  }
};
Christoffel christoffel(const MetricField& g, std::span<const double> p);

/// Covariant acceleration (nabla_X X)^k = X^i d_i X^k + Gamma^k_{ij} X^i X^j.
std::vector<double> cov_accel(const MetricField& g, const VectorFieldRepr& X,
                              std::span<const double> p);

/// Norm of X at p in the metric g.
double metric_norm(const MetricField& g, const VectorFieldRepr& X, std::span<const double> p);

/// max over samples and coordinate directions of
/// |(L_X alpha - g(nabla_X X, .))(d_i)| with alpha = flat(g, X).
/// X must have unit g-length at each sample (tolerance 1e-6).
double wadsley_residual(const MetricField& g, const VectorFieldRepr& X,
                        const std::vector<Point>& samples);

}  // namespace volx
