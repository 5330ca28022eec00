#pragma once

#include <functional>
#include <span>
#include <vector>

#include "volx/chart.hpp"

namespace volx {

/// Strictly increasing k-element subsets of {0..n-1} in lexicographic order.
/// The i-th entry is the i-th multi-index of a degree-k form on an
/// n-dimensional chart; for k > n the list is empty.
const std::vector<std::vector<int>>& increasing_indices(int n, int k);

/// Position of a sorted multi-index in increasing_indices(n, k).
int multi_index_position(int n, const std::vector<int>& idx);

/// Sign of the permutation sorting the concatenation (left, right) of two
/// disjoint increasing index sets.
int shuffle_sign(const std::vector<int>& left, const std::vector<int>& right);

using CoeffFn = std::function<std::vector<double>(std::span<const double>)>;
// Coefficient gradients: row per coefficient, column per coordinate.
using CoeffGradFn = std::function<Matrix(std::span<const double>)>;

/// Degree-k differential form on a chart, stored as a dense coefficient map
/// over the strictly increasing k-multi-indices (lexicographic order).
/// Degrees above the chart dimension are allowed internally and represent the
/// identically zero form (they carry no coefficients).
class KForm {
public:
  KForm() = default;
  KForm(ChartPtr chart, int degree, CoeffFn coeffs, CoeffGradFn coeff_grads = nullptr);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  int coefficient_count() const { return n_coeffs_; }
  bool trivially_zero() const { return n_coeffs_ == 0; }
  bool has_analytic_grads() const { return static_cast<bool>(coeff_grads_); }

  std::vector<double> coeffs_at(std::span<const double> x) const;
  /// Analytic coefficient gradients when available, else central differences.
  Matrix coeff_grads_at(std::span<const double> x) const;

private:
  ChartPtr chart_;
  int degree_ = 0;
  int n_coeffs_ = 0;
  CoeffFn coeffs_;
  CoeffGradFn coeff_grads_;
};

/// Public constructor enforcing 0 <= degree <= dim.
KForm make_kform(ChartPtr chart, int degree, CoeffFn coeffs, CoeffGradFn coeff_grads = nullptr);

/// The zero form of the given degree.
KForm zero_form(ChartPtr chart, int degree);

/// Constant-coefficient form.
KForm constant_form(ChartPtr chart, int degree, std::vector<double> coeffs);

/// Coordinate differential dx_i.
KForm coordinate_differential(ChartPtr chart, int i);

/// A 0-form from a scalar field, and back.
KForm as_kform(const ScalarField& f);
ScalarField as_scalar(const KForm& f);

KForm operator+(const KForm& a, const KForm& b);
KForm operator-(const KForm& a, const KForm& b);
KForm operator*(double s, const KForm& a);
KForm operator*(const ScalarField& f, const KForm& a);

/// Pointwise alternating product with the shuffle-sign convention.
/// wedge(a, b) and wedge(b, a) are bit-exact negatives/copies of each other
/// per the graded sign (-1)^{kl}.
KForm wedge(const KForm& a, const KForm& b);

/// Exterior derivative. Uses analytic coefficient gradients when present,
/// central finite differences otherwise. For a top-degree input the result is
/// the canonical zero form of degree dim+1 (trivially_zero() flags it).
KForm ext_d(const KForm& w);

/// Interior product (contraction on the first slot); degree must be >= 1.
KForm interior(const VectorFieldRepr& X, const KForm& w);

/// Lie derivative via the Cartan formula; degree 0 reduces to X(f).
KForm lie_derivative(const VectorFieldRepr& X, const KForm& w);

/// Pullback along a smooth map; for degree > source dimension the result is
/// the canonical zero form.
KForm pullback(const SmoothMap& F, const KForm& w);

/// max over the points of the coefficient max-norm. Non-finite coefficients
/// raise NumericError.
double max_coeff_norm(const KForm& w, const std::vector<Point>& points);

}  // namespace volx
