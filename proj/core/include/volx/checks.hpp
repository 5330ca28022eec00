#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "volx/integrate.hpp"
#include "volx/report.hpp"

namespace volx {

/// Cube chart [-1, 1]^dim shared by the randomized form suites.
ChartPtr cube_chart(int dim);

/// Generator spec for random polynomial forms. Integer coefficients keep the
/// analytic gradients exact, so identity residuals measure the algebra and
/// not finite-difference noise.
struct RandomFormSpec {
  int dim = 3;
  int degree = 1;
  int polynomial_degree = 2;
  int coeff_lo = -5;
  int coeff_hi = 5;
  std::uint64_t seed = 0;
};

KForm random_polynomial_form(const RandomFormSpec& spec);

struct ResidualScan {
  double residual = 0.0;  // max coefficient-wise |lhs - rhs| over the points
  double scale = 0.0;     // max coefficient magnitude of either side
};

/// Residual of the wedge-power comparison identity
///   a^(da)^n - b^(db)^n =
///     (a - b) ^ sum_{j=0}^{n} (da)^j (db)^{n-j}
///     + d( a ^ b ^ sum_{j=0}^{n-1} (da)^j (db)^{n-1-j} ),
/// with both sides expanded through the forms machinery. The correction sum
/// is empty for n = 0.
ResidualScan abbondandolo_scan(const KForm& alpha, const KForm& beta, int n,
                               const std::vector<Point>& points);
double abbondandolo_residual(const KForm& alpha, const KForm& beta, int n,
                             const std::vector<Point>& points);

/// Randomized suite over `n_seeds` pairs of polynomial 1-forms on the cube
/// chart; computed is the worst residual relative to the coefficient scale.
CheckReport abbondandolo_suite(int dim, int n, int n_seeds, int n_points,
                               double rel_tolerance = 1e-8);

/// Volume equality for two 1-forms sharing the normalization a(X) = b(X) = 1
/// and i_X da = i_X db = 0 (checked at 200 sample points; a violated
/// hypothesis is reported by name). computed/expected are the two integrals
/// of the (2n+1)-form a ^ (da)^n and b ^ (db)^n over the chain.
CheckReport volume_invariance(const KForm& alpha, const KForm& beta, const VectorFieldRepr& X,
                              const ParametrizedChain& chain, int n, const QuadratureSpec& spec,
                              double sample_margin = 1e-3);

/// max(|i_X gamma|, |i_X d gamma|) over the points vs 0. Default tolerance is
/// 1e-8 for forms with analytic gradients and 1e-5 for finite differences.
CheckReport basic_form_check(const KForm& gamma, const VectorFieldRepr& X,
                             const std::vector<Point>& points,
                             std::optional<double> tolerance = std::nullopt);

/// Well-definedness of the pairing: int a ^ sigma vs int a ^ (sigma + d tau)
/// for basic sigma and tau.
CheckReport pairing_invariance(const KForm& alpha, const KForm& sigma, const KForm& tau,
                               const VectorFieldRepr& X, const ParametrizedChain& chain,
                               const QuadratureSpec& spec);

/// max over points of max(|a(X) - 1|, |i_X da|) vs 0: the two conditions
/// characterising a geodesible field's characteristic form.
CheckReport geodesibility_residual(const KForm& alpha, const VectorFieldRepr& X,
                                   const std::vector<Point>& points,
                                   std::optional<double> tolerance = std::nullopt);

/// Structure-equation residual of a would-be Cartan pair:
/// |w1^dw1 - w2^dw2| + |w1^dw2| + |w2^dw1| at the points, plus a
/// nonvanishing witness min |w1^dw1| (reported in detail; a vanishing witness
/// adds 1 to computed so the report fails).
CheckReport cartan_residual(const KForm& omega1, const KForm& omega2,
                            const std::vector<Point>& points, double tolerance = 1e-8,
                            double witness_floor = 1e-9);

/// Pointwise least-squares solution of dw1 = w2 ^ alpha, dw2 = alpha ^ w1
/// (6 equations, 3 unknowns on a 3-dimensional chart). Throws SingularMatrix
/// with the singular values when the system is rank deficient.
std::vector<double> cartan_solve_alpha(const KForm& omega1, const KForm& omega2,
                                       std::span<const double> p,
                                       std::vector<double>* singular_values = nullptr);

/// The solved structure form as a KForm (coefficients solve pointwise).
KForm cartan_alpha_form(const KForm& omega1, const KForm& omega2);

/// The common-kernel field of the pair, normalized by alpha(X) = 1.
VectorFieldRepr cartan_kernel_field(const KForm& omega1, const KForm& omega2);

/// Pipeline identity for the complex-pair machinery: with alpha_c = i alpha,
/// int alpha_c ^ d alpha_c must equal (-vol_X, 0), vol_X = int alpha^d alpha.
/// Complex forms are pairs of real ones; no complex arithmetic type.
CheckReport bott_relation(const KForm& omega1, const KForm& omega2, const VectorFieldRepr& X,
                          const ParametrizedChain& chain, const QuadratureSpec& spec,
                          double tolerance = 1e-8);

/// Integral of tau . sigma over a 2-chain (the return-time volume formula;
/// callers supply sigma = d alpha restricted to the surface of section).
IntegrationResult return_time_volume(const ScalarField& tau, const KForm& sigma,
                                     const ParametrizedChain& chain, const QuadratureSpec& spec);

}  // namespace volx
