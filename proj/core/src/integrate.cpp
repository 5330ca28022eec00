#include "volx/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "volx/errors.hpp"

namespace volx {

double Box::volume() const {
  double v = 1.0;
  for (const Interval& b : axes) v *= b.width();
  return v;
}

ParametrizedChain make_chain(Box param_domain, SmoothMap map, int orientation) {
  if (orientation != 1 && orientation != -1)
    throw std::invalid_argument("make_chain: orientation must be +1 or -1");
  const int k = param_domain.dim();
  if (map.source->dim() != k)
    throw ChartMismatch("make_chain: map source dimension != parameter box dimension");
  return ParametrizedChain{k, std::move(param_domain), std::move(map), orientation};
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence
// ---------------------------------------------------------------------------

namespace {

GaussRule compute_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // one clean-up iteration for the derivative at the converged node
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_rule(order)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// deterministic accumulation
// ---------------------------------------------------------------------------

namespace {

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

[[noreturn]] void throw_bad_node(std::span<const double> u, long index) {
  std::ostringstream os;
  os << "integrand non-finite at node " << index << " (";
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
  os << ")";
  throw NumericError(os.str());
}

// integrand(u) -> value; evaluates over the box with the requested rule
struct Kernel {
  const Box& box;
  std::function<double(std::span<const double>)> f;

  // Tensor-product Gauss-Legendre at the given order; returns weighted sum.
  double gauss(int order, long* evals) const {
    const int dim = box.dim();
    const GaussRule& rule = gauss_rule(order);
    long total = 1;
    for (int i = 0; i < dim; ++i) total *= order;
    std::vector<double> terms(static_cast<std::size_t>(total));
    std::vector<double> u(static_cast<std::size_t>(dim));
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    for (long t = 0; t < total; ++t) {
      long rem = t;
      double wprod = 1.0;
      for (int i = 0; i < dim; ++i) {
        const int q = static_cast<int>(rem % order);
        rem /= order;
        const Interval& b = box.axes[static_cast<std::size_t>(i)];
        u[static_cast<std::size_t>(i)] =
            0.5 * (b.lo + b.hi) + 0.5 * b.width() * rule.nodes[static_cast<std::size_t>(q)];
        wprod *= 0.5 * b.width() * rule.weights[static_cast<std::size_t>(q)];
      }
      const double val = f(u);
      if (!std::isfinite(val)) throw_bad_node(u, t);
      terms[static_cast<std::size_t>(t)] = wprod * val;
    }
    *evals += total;
    return pairwise_sum(terms);
  }

  // Counter-based Monte Carlo; mean and standard error.
  std::pair<double, double> monte_carlo(long samples, std::uint64_t seed, long* evals) const {
    const int dim = box.dim();
    std::vector<double> vals(static_cast<std::size_t>(samples));
    std::vector<double> u(static_cast<std::size_t>(dim));
    for (long s = 0; s < samples; ++s) {
      for (int i = 0; i < dim; ++i) {
        const Interval& b = box.axes[static_cast<std::size_t>(i)];
        u[static_cast<std::size_t>(i)] =
            b.lo + b.width() * uniform01(seed, static_cast<std::uint64_t>(s) * dim + i);
      }
      const double val = f(u);
      if (!std::isfinite(val)) throw_bad_node(u, s);
      vals[static_cast<std::size_t>(s)] = val;
    }
    *evals += samples;
    const double mean = pairwise_sum(vals) / static_cast<double>(samples);
    double se = 0.0;
    if (samples > 1) {
      std::vector<double> sq(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double d = vals[i] - mean;
        sq[i] = d * d;
      }
      const double var = pairwise_sum(sq) / static_cast<double>(samples - 1);
      se = std::sqrt(var / static_cast<double>(samples));
    }
    const double vol = box.volume();
    return {vol * mean, vol * se};
  }

  IntegrationResult run(const QuadratureSpec& spec) const {
    IntegrationResult res;
    if (const auto* gl = std::get_if<GaussLegendre>(&spec)) {
      if (gl->order < 2) throw std::invalid_argument("GaussLegendre: order must be >= 2");
      const double fine = gauss(gl->order, &res.evaluations);
      // refinement partner: half order, or order + 2 when halving is no change
      const int other_order = gl->order >= 4 ? gl->order / 2 : gl->order + 2;
      const double other = gauss(other_order, &res.evaluations);
      res.value = fine;
      res.error_estimate = std::fabs(fine - other);
    } else {
      const auto& mc = std::get<MonteCarlo>(spec);
      if (mc.samples < 1) throw std::invalid_argument("MonteCarlo: samples must be >= 1");
      const auto [val, se] = monte_carlo(mc.samples, mc.seed, &res.evaluations);
      res.value = val;
      res.error_estimate = se;
    }
    return res;
  }
};

}  // namespace

IntegrationResult integrate_form(const KForm& w, const ParametrizedChain& chain,
                                 const QuadratureSpec& spec) {
  if (w.degree() != chain.k)
    throw DegreeError("integrate_form: form degree != chain dimension");
  if (w.chart().get() != chain.map.target.get())
    throw ChartMismatch("integrate_form: form and chain target charts differ");

  const KForm pulled = pullback(chain.map, w);
  if (pulled.trivially_zero())
    return IntegrationResult{0.0, 0.0, 0};
  auto integrand = [pulled](std::span<const double> u) { return pulled.coeffs_at(u)[0]; };
  Kernel kernel{chain.param_domain, std::move(integrand)};
  IntegrationResult res = kernel.run(spec);
  res.value *= chain.orientation;
  return res;
}

IntegrationResult integrate_scalar(const ScalarField& f, const Box& box,
                                   const QuadratureSpec& spec) {
  if (box.dim() != f.chart->dim())
    throw ChartMismatch("integrate_scalar: box dimension != chart dimension");
  auto ev = f.eval;
  Kernel kernel{box, [ev](std::span<const double> u) { return ev(u); }};
  return kernel.run(spec);
}

IntegrationResult integrate_form_panels(const KForm& w, const ParametrizedChain& chain,
                                        const QuadratureSpec& spec, int axis,
                                        const std::vector<double>& breakpoints) {
  const Interval full = chain.param_domain.axes[static_cast<std::size_t>(axis)];
  std::vector<double> cuts;
  cuts.push_back(full.lo);
  for (double c : breakpoints)
    if (c > full.lo && c < full.hi) cuts.push_back(c);
  cuts.push_back(full.hi);
  std::sort(cuts.begin(), cuts.end());

  IntegrationResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    ParametrizedChain panel = chain;
    panel.param_domain.axes[static_cast<std::size_t>(axis)] = Interval{cuts[i], cuts[i + 1]};
    const IntegrationResult r = integrate_form(w, panel, spec);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  }
  return total;
}

}  // namespace volx
