#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "volx/linalg.hpp"

namespace volx {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

/// A single coordinate chart. All forms, fields and maps in this library are
/// expressed in chart coordinates; charts are immutable and shared by pointer,
/// and "same chart" always means pointer identity.
class ChartDomain {
public:
  ChartDomain(std::string name, std::vector<std::string> coordinate_names,
              std::vector<Interval> bounds, std::string excluded_sets = "");

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(bounds_.size()); }
  const std::vector<std::string>& coordinate_names() const { return coordinate_names_; }
  const std::vector<Interval>& bounds() const { return bounds_; }
  const std::string& excluded_sets() const { return excluded_sets_; }

  bool contains(std::span<const double> x) const;

private:
  std::string name_;
  std::vector<std::string> coordinate_names_;
  std::vector<Interval> bounds_;
  std::string excluded_sets_;
};

using ChartPtr = std::shared_ptr<const ChartDomain>;

ChartPtr make_chart(std::string name, std::vector<std::string> coordinate_names,
                    std::vector<Interval> bounds, std::string excluded_sets = "");

/// A point of a chart. Construction through make_point validates the bounds;
/// numerical kernels work on raw coordinate spans and skip revalidation.
struct Point {
  ChartPtr chart;
  std::vector<double> x;
};

Point make_point(ChartPtr chart, std::vector<double> coords);

using ScalarFn = std::function<double(std::span<const double>)>;
using VectorFn = std::function<std::vector<double>(std::span<const double>)>;
using MatrixFn = std::function<Matrix(std::span<const double>)>;

/// Real-valued function on a chart, with an optional analytic gradient.
struct ScalarField {
  ChartPtr chart;
  ScalarFn eval;
  VectorFn grad;  // may be empty; finite differences are used then

  std::vector<double> gradient_at(std::span<const double> x) const;
};

/// Vector field given by its component functions in chart coordinates.
struct VectorFieldRepr {
  ChartPtr chart;
  VectorFn components;
};

/// Smooth map between charts, with an optional analytic Jacobian
/// (target.dim rows, source.dim columns).
struct SmoothMap {
  ChartPtr source;
  ChartPtr target;
  VectorFn components;
  MatrixFn jacobian;  // may be empty

  std::vector<double> operator()(std::span<const double> x) const { return components(x); }
  Matrix jacobian_at(std::span<const double> x) const;
};

SmoothMap identity_map(ChartPtr chart);

/// Central-difference step: cbrt(eps) * max(1, |x|).
double fd_step(double x);

/// Gradient of f at x by central differences.
std::vector<double> fd_gradient(const ScalarFn& f, std::span<const double> x);

/// Jacobian of f (n_out components) at x by central differences.
Matrix fd_jacobian(const VectorFn& f, std::span<const double> x, int n_out);

/// Deterministic counter-based uniform variate in [0,1); the same
/// (seed, counter) pair always yields the same value.
double uniform01(std::uint64_t seed, std::uint64_t counter);

/// Seeded interior sample points, keeping a per-axis relative margin away
/// from the chart boundary (coordinate singularities live on the boundary).
std::vector<Point> sample_interior_points(const ChartPtr& chart, int count,
                                          std::uint64_t seed, double margin = 1e-6);

/// Throws NumericError if a component is non-finite at one of the points.
void validate_vector_field(const VectorFieldRepr& field, const std::vector<Point>& points);

}  // namespace volx
