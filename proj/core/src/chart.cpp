#include "volx/chart.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "volx/errors.hpp"

namespace volx {

ChartDomain::ChartDomain(std::string name, std::vector<std::string> coordinate_names,
                         std::vector<Interval> bounds, std::string excluded_sets)
    : name_(std::move(name)),
      coordinate_names_(std::move(coordinate_names)),
      bounds_(std::move(bounds)),
      excluded_sets_(std::move(excluded_sets)) {
  if (bounds_.empty() || coordinate_names_.size() != bounds_.size())
    throw std::invalid_argument("chart '" + name_ +
                                "': dim = #coordinate_names = #bounds is required");
  for (const auto& b : bounds_)
    if (!(b.lo < b.hi))
      throw std::invalid_argument("chart '" + name_ + "': interval needs lo < hi");
}

bool ChartDomain::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!(x[i] >= bounds_[i].lo && x[i] <= bounds_[i].hi)) return false;
  return true;
}

ChartPtr make_chart(std::string name, std::vector<std::string> coordinate_names,
                    std::vector<Interval> bounds, std::string excluded_sets) {
  return std::make_shared<const ChartDomain>(std::move(name), std::move(coordinate_names),
                                             std::move(bounds), std::move(excluded_sets));
}

Point make_point(ChartPtr chart, std::vector<double> coords) {
  if (!chart) throw std::invalid_argument("make_point: null chart");
  if (!chart->contains(coords))
    throw std::invalid_argument("make_point: coordinates outside chart '" + chart->name() + "'");
  return Point{std::move(chart), std::move(coords)};
}

double fd_step(double x) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::fabs(x));
}

std::vector<double> fd_gradient(const ScalarFn& f, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> grad(n), pt(x.begin(), x.end());
  for (int i = 0; i < n; ++i) {
    const double h = fd_step(x[i]);
    const double xi = pt[i];
    pt[i] = xi + h;
    const double up = f(pt);
    pt[i] = xi - h;
    const double dn = f(pt);
    pt[i] = xi;
    grad[i] = (up - dn) / (2.0 * h);
  }
  return grad;
}

Matrix fd_jacobian(const VectorFn& f, std::span<const double> x, int n_out) {
  const int n = static_cast<int>(x.size());
  Matrix jac(n_out, n);
  std::vector<double> pt(x.begin(), x.end());
  for (int j = 0; j < n; ++j) {
    const double h = fd_step(x[j]);
    const double xj = pt[j];
    pt[j] = xj + h;
    const std::vector<double> up = f(pt);
    pt[j] = xj - h;
    const std::vector<double> dn = f(pt);
    pt[j] = xj;
    for (int i = 0; i < n_out; ++i) jac(i, j) = (up[i] - dn[i]) / (2.0 * h);
  }
  return jac;
}

std::vector<double> ScalarField::gradient_at(std::span<const double> x) const {
  if (grad) return grad(x);
  return fd_gradient(eval, x);
}

Matrix SmoothMap::jacobian_at(std::span<const double> x) const {
  if (jacobian) return jacobian(x);
  return fd_jacobian(components, x, target->dim());
}

SmoothMap identity_map(ChartPtr chart) {
  const int n = chart->dim();
  return SmoothMap{
      chart, chart,
      [](std::span<const double> x) { return std::vector<double>(x.begin(), x.end()); },
      [n](std::span<const double>) { return Matrix::identity(n); }};
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ (counter * 0xD1342543DE82EF95ULL + 1));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

void validate_vector_field(const VectorFieldRepr& field, const std::vector<Point>& points) {
  for (const Point& p : points) {
    const std::vector<double> v = field.components(p.x);
    if (static_cast<int>(v.size()) != field.chart->dim())
      throw NumericError("validate_vector_field: wrong component count");
    for (double c : v)
      if (!std::isfinite(c))
        throw NumericError("validate_vector_field: non-finite component at a sample point");
  }
}

std::vector<Point> sample_interior_points(const ChartPtr& chart, int count, std::uint64_t seed,
                                          double margin) {
  const int n = chart->dim();
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
      const Interval& b = chart->bounds()[i];
      const double u = uniform01(seed, static_cast<std::uint64_t>(k) * n + i);
      const double pad = margin * b.width();
      x[i] = b.lo + pad + u * (b.width() - 2.0 * pad);
    }
    pts.push_back(Point{chart, std::move(x)});
  }
  return pts;
}

}  // namespace volx
