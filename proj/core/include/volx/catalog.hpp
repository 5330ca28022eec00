#pragma once

#include <functional>

#include "volx/integrate.hpp"
#include "volx/report.hpp"
#include "volx/riemannian.hpp"

namespace volx {

// ---------------------------------------------------------------------------
// Shared charts. Each returns a process-wide singleton so objects built by
// different constructors can be combined.
// ---------------------------------------------------------------------------

/// Hopf coordinates (eta, phi1, phi2) on S^3, eta in (0, pi/2); the circles
/// eta = 0, pi/2 are the chart's singular loci.
ChartPtr hopf_chart();

/// Ambient coordinates (x1, y1, x2, y2) of R^4 = C^2.
ChartPtr ambient_chart();

/// Solid-torus coordinates (r, phi, theta) with r in (0,1], theta in R/Z.
ChartPtr disc_chart();

/// (eta, phi1, phi2) -> (cos eta cos phi1, cos eta sin phi1,
///                       sin eta cos phi2, sin eta sin phi2), with analytic
/// Jacobian.
SmoothMap s3_embedding();

// ---------------------------------------------------------------------------
// Hopf fibration
// ---------------------------------------------------------------------------

struct HopfBundle {
  ChartPtr chart;
  VectorFieldRepr field;  // 2 pi (d_phi1 + d_phi2), period 1
  KForm alpha;            // (cos^2 eta dphi1 + sin^2 eta dphi2) / 2 pi
};
HopfBundle hopf_bundle();

/// Full-chart 3-chain over S^3. Its orientation is pinned so that the Hopf
/// volume integral of alpha ^ d alpha equals +1; all signed results inherit
/// this choice.
ParametrizedChain s3_chain();

/// Section of the Hopf fibration over the plane:
/// (r, phi) -> (atan r, 0, phi).
SmoothMap hopf_section();

struct FluxResult {
  IntegrationResult integral;
  double truncation_bound = 0.0;  // bound on the dropped tail r > r_max
};

/// Integral of the pulled-back curvature form over r <= r_max, by composite
/// Gauss-Legendre on geometric radial panels. The truncation bound is the
/// closed-form tail 1/(1 + r_max^2).
FluxResult hopf_section_flux(double r_max, const QuadratureSpec& spec);

/// Same integral, but the tail is estimated by doubling r_max instead of
/// using the closed form (for integrands without a known tail bound).
FluxResult hopf_section_flux_doubling(double r_max, const QuadratureSpec& spec);

/// A smooth 1-form on S^3 that is basic for the Hopf field and not closed:
/// t ds with t = cos 2eta, s = sin 2eta cos(phi2 - phi1). Adding a multiple
/// of it to the connection form keeps the form admissible but changes it.
KForm hopf_basic_perturbation();

// ---------------------------------------------------------------------------
// Disc-map contact forms on S^3 (solid-torus picture)
// ---------------------------------------------------------------------------

/// Profile H as a function of u = r^2 on [0, 1], with its u-derivative.
/// Construction enforces H - u H' > 0 on a 1000-point sample.
struct HProfile {
  std::function<double(double)> H;
  std::function<double(double)> dH;
};
HProfile make_hprofile(std::function<double(double)> H, std::function<double(double)> dH);

struct DiscContact {
  ChartPtr chart;
  KForm alpha;               // H dtheta + (r^2/2) dphi
  VectorFieldRepr reeb;      // (d_theta - 2 H' d_phi) / (H - r^2 H')
  ScalarField return_time;   // tau = H - r^2 H'
};
DiscContact disc_contact(const HProfile& profile);

ParametrizedChain disc_solid_torus_chain();
/// The disc {theta = 0} included into the solid torus.
ParametrizedChain disc_section_chain();

enum class DiscMethod { direct, return_time };

/// Volume of the Reeb field, either directly as the integral of
/// alpha ^ d alpha over the solid torus, or as the return-time integral
/// of tau . (d alpha restricted to the disc).
IntegrationResult disc_volume(const HProfile& profile, DiscMethod method,
                              const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Beltrami family of geodesically equivalent metrics on S^3
// ---------------------------------------------------------------------------

struct BeltramiFamily {
  ChartPtr chart;                   // the Hopf chart
  MetricField metric;               // closed-form g_{a1,a2} in chart coordinates
  VectorFieldRepr great_circle_field;  // X1 in chart coordinates
  VectorFieldRepr unit_field;       // X1 / L
  ScalarField length_sq;            // displayed L^2
  KForm alpha;                      // flat(metric, unit_field)
  KForm l_alpha_display;            // pullback of the displayed L alpha covector
  SmoothMap deformation;            // p -> A p / |A p| into the ambient chart
  MetricField ambient_display;      // displayed bilinear form on the ambient chart
};
BeltramiFamily beltrami_family(double a1, double a2);

// ---------------------------------------------------------------------------
// Quaternionic coframe and its Cartan structure
// ---------------------------------------------------------------------------

/// Restrictions to S^3 of
///   a = x1 dx2 - x2 dx1 + x3 dx4 - x4 dx3
///   b = x1 dx3 - x3 dx1 + x4 dx2 - x2 dx4
///   c = x1 dx4 - x4 dx1 + x2 dx3 - x3 dx2
/// in Hopf-chart coordinates, with analytic gradients. The pair (b, c)
/// satisfies db = c ^ (2a), dc = (2a) ^ b, so the structure form solved from
/// it is +2a (frozen convention).
struct QuaternionCoframe {
  ChartPtr chart;
  KForm a, b, c;
};
QuaternionCoframe quaternionic_coframe();

// ---------------------------------------------------------------------------
// Surfaces of revolution with cone points
// ---------------------------------------------------------------------------

/// Rotationally symmetric metric dr^2 + f(r)^2 dphi^2 on [0, L] x S^1, with
/// cone orders alpha1, alpha2 at the two poles. Endpoint derivative data is
/// explicit because finite differences at a boundary zero of f are
/// ill-conditioned. Closing conditions: f(0) = f(L) = 0, f'(0) = 1/alpha1,
/// f'(L) = -1/alpha2, all within 1e-8; f > 0 inside.
struct RevolutionProfile {
  double length = 0.0;
  long alpha1 = 1;
  long alpha2 = 1;
  std::function<double(double)> f, df, d2f;
};
RevolutionProfile make_revolution_profile(double length, long alpha1, long alpha2,
                                          std::function<double(double)> f,
                                          std::function<double(double)> df,
                                          std::function<double(double)> d2f);

RevolutionProfile round_sphere_profile();           // f = sin r, no cones
RevolutionProfile spindle_profile(long alpha);      // f = sin(r)/alpha
RevolutionProfile football_profile(long a1, long a2);

/// Total curvature int K dA by quadrature (K = -f''/f, dA = f dr dphi)
/// against 2 pi chi_orb of the sphere with the profile's cone points.
CheckReport gauss_bonnet_revolution(const RevolutionProfile& profile,
                                    const QuadratureSpec& spec, double tolerance = 1e-6);

}  // namespace volx
