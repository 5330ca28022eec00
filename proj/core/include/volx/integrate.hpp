#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "volx/forms.hpp"

namespace volx {

/// Tensor-product Gauss-Legendre rule with the given order per axis.
struct GaussLegendre {
  int order = 32;
};

/// Seeded Monte Carlo; sample positions come from a counter-based generator
/// keyed by (seed, sample index), so results do not depend on evaluation
/// order or worker count.
struct MonteCarlo {
  long samples = 100000;
  std::uint64_t seed = 0;
};

using QuadratureSpec = std::variant<GaussLegendre, MonteCarlo>;

struct Box {
  std::vector<Interval> axes;
  int dim() const { return static_cast<int>(axes.size()); }
  double volume() const;
};

/// Oriented k-dimensional integration domain: a parameter box mapped into a
/// chart. The map's source chart must have dimension k.
struct ParametrizedChain {
  int k = 0;
  Box param_domain;
  SmoothMap map;
  int orientation = 1;
};

ParametrizedChain make_chain(Box param_domain, SmoothMap map, int orientation = 1);

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// One-dimensional Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

/// Integral of a degree-k form over an oriented k-chain. The integrand is the
/// single coefficient of the pullback of the form along the chain map.
/// Gauss-Legendre error estimates come from comparing against the half-order
/// rule; Monte Carlo reports the sample standard error. Accumulation is
/// pairwise in node-index order, so results are run-to-run identical.
IntegrationResult integrate_form(const KForm& w, const ParametrizedChain& chain,
                                 const QuadratureSpec& spec);

/// Integral of a scalar over a box (Lebesgue measure).
IntegrationResult integrate_scalar(const ScalarField& f, const Box& box,
                                   const QuadratureSpec& spec);

/// Composite integration: split the chain's parameter box along `axis` at the
/// given interior breakpoints and sum the panel integrals. Useful for
/// integrands whose scale varies over decades (e.g. truncated improper radial
/// integrals).
IntegrationResult integrate_form_panels(const KForm& w, const ParametrizedChain& chain,
                                        const QuadratureSpec& spec, int axis,
                                        const std::vector<double>& breakpoints);

}  // namespace volx
