#include "volx/catalog.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "volx/errors.hpp"
#include "volx/seifert.hpp"

namespace volx {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

ChartPtr hopf_chart() {
  static const ChartPtr chart = make_chart(
      "hopf", {"eta", "phi1", "phi2"},
      {Interval{0.0, kPi / 2.0}, Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}},
      "eta in {0, pi/2}: Hopf coordinate degeneracy (circles r1 = 0, r2 = 0)");
  return chart;
}

ChartPtr ambient_chart() {
  static const ChartPtr chart =
      make_chart("c2", {"x1", "y1", "x2", "y2"},
                 {Interval{-1.25, 1.25}, Interval{-1.25, 1.25}, Interval{-1.25, 1.25},
                  Interval{-1.25, 1.25}});
  return chart;
}

ChartPtr disc_chart() {
  static const ChartPtr chart = make_chart(
      "solid_torus", {"r", "phi", "theta"},
      {Interval{0.0, 1.0}, Interval{0.0, kTwoPi}, Interval{0.0, 1.0}},
      "r = 0: polar axis of the disc factor");
  return chart;
}

SmoothMap s3_embedding() {
  return SmoothMap{
      hopf_chart(), ambient_chart(),
      [](std::span<const double> p) {
        const double ce = std::cos(p[0]), se = std::sin(p[0]);
        return std::vector<double>{ce * std::cos(p[1]), ce * std::sin(p[1]),
                                   se * std::cos(p[2]), se * std::sin(p[2])};
      },
      [](std::span<const double> p) {
        const double ce = std::cos(p[0]), se = std::sin(p[0]);
        const double c1 = std::cos(p[1]), s1 = std::sin(p[1]);
        const double c2 = std::cos(p[2]), s2 = std::sin(p[2]);
        Matrix j(4, 3);
        j(0, 0) = -se * c1;
        j(0, 1) = -ce * s1;
        j(1, 0) = -se * s1;
        j(1, 1) = ce * c1;
        j(2, 0) = ce * c2;
        j(2, 2) = -se * s2;
        j(3, 0) = ce * s2;
        j(3, 2) = se * c2;
        return j;
      }};
}

// ---------------------------------------------------------------------------
// Hopf fibration
// ---------------------------------------------------------------------------

HopfBundle hopf_bundle() {
  HopfBundle out;
  out.chart = hopf_chart();
  out.field = VectorFieldRepr{out.chart, [](std::span<const double>) {
                                return std::vector<double>{0.0, kTwoPi, kTwoPi};
                              }};
  out.alpha = KForm(
      out.chart, 1,
      [](std::span<const double> p) {
        const double c = std::cos(p[0]), s = std::sin(p[0]);
        return std::vector<double>{0.0, c * c / kTwoPi, s * s / kTwoPi};
      },
      [](std::span<const double> p) {
        Matrix g(3, 3);
        const double s2 = std::sin(2.0 * p[0]);
        g(1, 0) = -s2 / kTwoPi;
        g(2, 0) = s2 / kTwoPi;
        return g;
      });
  return out;
}

ParametrizedChain s3_chain() {
  // (eta, phi1, phi2) is negatively oriented for the orientation that makes
  // the Hopf volume +1, hence orientation -1 here.
  Box box{hopf_chart()->bounds()};
  return make_chain(std::move(box), identity_map(hopf_chart()), -1);
}

SmoothMap hopf_section() {
  static const ChartPtr plane = make_chart(
      "plane_polar", {"r", "phi"}, {Interval{0.0, 1e9}, Interval{0.0, kTwoPi}},
      "r = 0: polar origin");
  return SmoothMap{plane, hopf_chart(),
                   [](std::span<const double> p) {
                     return std::vector<double>{std::atan(p[0]), 0.0, p[1]};
                   },
                   [](std::span<const double> p) {
                     Matrix j(3, 2);
                     j(0, 0) = 1.0 / (1.0 + p[0] * p[0]);
                     j(2, 1) = 1.0;
                     return j;
                   }};
}

namespace {

FluxResult section_flux_impl(double r_max, const QuadratureSpec& spec) {
  if (!(r_max > 0.0))
    throw std::invalid_argument("hopf_section_flux: truncation radius must be positive");
  const HopfBundle hopf = hopf_bundle();
  const KForm curvature = ext_d(hopf.alpha);
  const SmoothMap section = hopf_section();
  Box box{{Interval{0.0, r_max}, Interval{0.0, kTwoPi}}};
  ParametrizedChain chain = make_chain(std::move(box), section, 1);

  // geometric radial panels resolve the scale range of r/(1+r^2)^2
  std::vector<double> cuts;
  for (double c = 1.0; c < r_max; c *= 10.0) cuts.push_back(c);
  FluxResult out;
  out.integral = integrate_form_panels(curvature, chain, spec, 0, cuts);
  return out;
}

}  // namespace

FluxResult hopf_section_flux(double r_max, const QuadratureSpec& spec) {
  FluxResult out = section_flux_impl(r_max, spec);
  out.truncation_bound = 1.0 / (1.0 + r_max * r_max);
  return out;
}

FluxResult hopf_section_flux_doubling(double r_max, const QuadratureSpec& spec) {
  FluxResult out = section_flux_impl(r_max, spec);
  const FluxResult wide = section_flux_impl(2.0 * r_max, spec);
  out.truncation_bound = std::fabs(wide.integral.value - out.integral.value);
  out.integral.evaluations += wide.integral.evaluations;
  return out;
}

KForm hopf_basic_perturbation() {
  // t ds with t = cos 2eta, s = sin 2eta cos(phi2 - phi1)
  return KForm(
      hopf_chart(), 1,
      [](std::span<const double> p) {
        const double C = std::cos(2.0 * p[0]), S = std::sin(2.0 * p[0]);
        const double cd = std::cos(p[2] - p[1]), sd = std::sin(p[2] - p[1]);
        return std::vector<double>{2.0 * C * C * cd, C * S * sd, -C * S * sd};
      },
      [](std::span<const double> p) {
        const double C = std::cos(2.0 * p[0]), S = std::sin(2.0 * p[0]);
        const double cd = std::cos(p[2] - p[1]), sd = std::sin(p[2] - p[1]);
        Matrix g(3, 3);
        g(0, 0) = -8.0 * C * S * cd;
        g(0, 1) = 2.0 * C * C * sd;
        g(0, 2) = -2.0 * C * C * sd;
        g(1, 0) = 2.0 * (C * C - S * S) * sd;
        g(1, 1) = -C * S * cd;
        g(1, 2) = C * S * cd;
        g(2, 0) = -g(1, 0);
        g(2, 1) = -g(1, 1);
        g(2, 2) = -g(1, 2);
        return g;
      });
}

// ---------------------------------------------------------------------------
// Disc-map contact forms
// ---------------------------------------------------------------------------

HProfile make_hprofile(std::function<double(double)> H, std::function<double(double)> dH) {
  for (int i = 0; i <= 1000; ++i) {
    const double u = static_cast<double>(i) / 1000.0;
    const double tau = H(u) - u * dH(u);
    if (!(tau > 0.0)) {
      std::ostringstream os;
      os << "HProfile: H - u H' must be positive on [0,1]; it is " << tau << " at u = " << u;
      throw std::invalid_argument(os.str());
    }
  }
  return HProfile{std::move(H), std::move(dH)};
}

DiscContact disc_contact(const HProfile& profile) {
  DiscContact out;
  out.chart = disc_chart();
  auto H = profile.H;
  auto dH = profile.dH;
  out.alpha = KForm(
      out.chart, 1,
      [H](std::span<const double> p) {
        const double r = p[0];
        return std::vector<double>{0.0, 0.5 * r * r, H(r * r)};
      },
      [H, dH](std::span<const double> p) {
        const double r = p[0];
        Matrix g(3, 3);
        g(1, 0) = r;
        g(2, 0) = 2.0 * r * dH(r * r);
        return g;
      });
  out.reeb = VectorFieldRepr{out.chart, [H, dH](std::span<const double> p) {
                               const double u = p[0] * p[0];
                               const double tau = H(u) - u * dH(u);
                               return std::vector<double>{0.0, -2.0 * dH(u) / tau, 1.0 / tau};
                             }};
  out.return_time = ScalarField{out.chart,
                                [H, dH](std::span<const double> p) {
                                  const double u = p[0] * p[0];
                                  return H(u) - u * dH(u);
                                },
                                nullptr};
  return out;
}

ParametrizedChain disc_solid_torus_chain() {
  Box box{disc_chart()->bounds()};
  return make_chain(std::move(box), identity_map(disc_chart()), 1);
}

ParametrizedChain disc_section_chain() {
  static const ChartPtr disc2 =
      make_chart("disc", {"r", "phi"}, {Interval{0.0, 1.0}, Interval{0.0, kTwoPi}},
                 "r = 0: polar origin");
  SmoothMap inclusion{disc2, disc_chart(),
                      [](std::span<const double> p) {
                        return std::vector<double>{p[0], p[1], 0.0};
                      },
                      [](std::span<const double>) {
                        Matrix j(3, 2);
                        j(0, 0) = 1.0;
                        j(1, 1) = 1.0;
                        return j;
                      }};
  Box box{disc2->bounds()};
  return make_chain(std::move(box), std::move(inclusion), 1);
}

IntegrationResult disc_volume(const HProfile& profile, DiscMethod method,
                              const QuadratureSpec& spec) {
  const DiscContact dc = disc_contact(profile);
  if (method == DiscMethod::direct) {
    const KForm three_form = wedge(dc.alpha, ext_d(dc.alpha));
    return integrate_form(three_form, disc_solid_torus_chain(), spec);
  }
  // tau . (d alpha restricted to the disc); the restriction happens in the
  // pullback along the inclusion chain
  const KForm sigma = ext_d(dc.alpha);
  const KForm integrand = dc.return_time * sigma;
  return integrate_form(integrand, disc_section_chain(), spec);
}

// ---------------------------------------------------------------------------
// Beltrami family
// ---------------------------------------------------------------------------

namespace {

struct AmbientPoint {
  double x1, y1, x2, y2;
  double r1s, r2s;
};

AmbientPoint ambient_of(std::span<const double> q) {
  AmbientPoint a{q[0], q[1], q[2], q[3], 0.0, 0.0};
  a.r1s = a.x1 * a.x1 + a.y1 * a.y1;
  a.r2s = a.x2 * a.x2 + a.y2 * a.y2;
  return a;
}

}  // namespace

BeltramiFamily beltrami_family(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0))
    throw std::invalid_argument("beltrami_family: parameters must be positive");

  BeltramiFamily out;
  out.chart = hopf_chart();
  const double A1 = a1 * a1, A2 = a2 * a2;

  // displayed bilinear form on the ambient chart
  out.ambient_display =
      MetricField{ambient_chart(), [A1, A2](std::span<const double> q) {
                    const AmbientPoint p = ambient_of(q);
                    const double delta = A1 * p.r1s + A2 * p.r2s;
                    const double d2 = delta * delta;
                    const std::vector<double> u1{p.x1, p.y1, 0.0, 0.0};
                    const std::vector<double> u2{0.0, 0.0, p.x2, p.y2};
                    Matrix g(4, 4);
                    g(0, 0) = A1 / delta;
                    g(1, 1) = A1 / delta;
                    g(2, 2) = A2 / delta;
                    g(3, 3) = A2 / delta;
                    for (int i = 0; i < 4; ++i)
                      for (int j = 0; j < 4; ++j)
                        g(i, j) -= (A1 * A1 * u1[i] * u1[j] + A2 * A2 * u2[i] * u2[j] +
                                    A1 * A2 * (u1[i] * u2[j] + u2[i] * u1[j])) /
                                   d2;
                    return g;
                  }};

  const SmoothMap emb = s3_embedding();
  out.metric = pullback_metric(emb, out.ambient_display);

  // X1 = x1 d_x2 - x2 d_x1 + y1 d_y2 - y2 d_y1 expressed in Hopf coordinates:
  // with delta = phi2 - phi1,
  //   X1 = cos(delta) d_eta - tan(eta) sin(delta) d_phi1
  //        - cot(eta) sin(delta) d_phi2
  out.great_circle_field =
      VectorFieldRepr{out.chart, [](std::span<const double> p) {
                        const double d = p[2] - p[1];
                        const double cd = std::cos(d), sd = std::sin(d);
                        const double t = std::tan(p[0]);
                        return std::vector<double>{cd, -t * sd, -sd / t};
                      }};

  out.length_sq = ScalarField{out.chart,
                              [A1, A2, emb](std::span<const double> p) {
                                const AmbientPoint a = ambient_of(emb.components(p));
                                const double delta = A1 * a.r1s + A2 * a.r2s;
                                const double mix = a.x1 * a.x2 + a.y1 * a.y2;
                                return (A1 * a.r2s + A2 * a.r1s) / delta -
                                       (A1 - A2) * (A1 - A2) * mix * mix / (delta * delta);
                              },
                              nullptr};

  {
    ScalarField lsq = out.length_sq;
    VectorFn x1c = out.great_circle_field.components;
    out.unit_field = VectorFieldRepr{out.chart, [lsq, x1c](std::span<const double> p) {
                                       const double inv_l = 1.0 / std::sqrt(lsq.eval(p));
                                       std::vector<double> v = x1c(p);
                                       for (double& c : v) c *= inv_l;
                                       return v;
                                     }};
  }

  out.alpha = flat(out.metric, out.unit_field);

  // displayed L alpha, as an ambient covector pulled back through the chart
  KForm l_alpha_ambient(
      ambient_chart(), 1, [A1, A2](std::span<const double> q) {
        const AmbientPoint p = ambient_of(q);
        const double delta = A1 * p.r1s + A2 * p.r2s;
        const double d2 = delta * delta;
        const double mix = p.x1 * p.x2 + p.y1 * p.y2;
        const double c1 = (A1 * A1 - A1 * A2) * mix / d2;
        const double c2 = (A2 * A2 - A1 * A2) * mix / d2;
        return std::vector<double>{-A1 / delta * p.x2 + c1 * p.x1,
                                   -A1 / delta * p.y2 + c1 * p.y1,
                                   A2 / delta * p.x1 - c2 * p.x2,
                                   A2 / delta * p.y1 - c2 * p.y2};
      });
  out.l_alpha_display = pullback(emb, l_alpha_ambient);

  // p -> A p / |A p| through the ambient chart, with analytic Jacobian
  const SmoothMap emb_copy = emb;
  out.deformation = SmoothMap{
      out.chart, ambient_chart(),
      [a1, a2, emb_copy](std::span<const double> p) {
        std::vector<double> w = emb_copy.components(p);
        w[0] *= a1;
        w[1] *= a1;
        w[2] *= a2;
        w[3] *= a2;
        const double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
        for (double& c : w) c /= n;
        return w;
      },
      [a1, a2, emb_copy](std::span<const double> p) {
        const Matrix jemb = emb_copy.jacobian_at(p);
        std::vector<double> w = emb_copy.components(p);
        const double scale[4] = {a1, a1, a2, a2};
        for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i)] *= scale[i];
        const double n2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
        const double n = std::sqrt(n2);
        // d(w/|w|) = (I - w w^T / |w|^2) / |w| . dw,  dw = diag(scale) . jemb
        Matrix j(4, 3);
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 3; ++c) {
            double s = scale[r] * jemb(r, c);
            for (int k = 0; k < 4; ++k)
              s -= w[static_cast<std::size_t>(r)] * w[static_cast<std::size_t>(k)] / n2 *
                   (scale[k] * jemb(k, c));
            j(r, c) = s / n;
          }
        return j;
      }};

  return out;
}

// ---------------------------------------------------------------------------
// Quaternionic coframe
// ---------------------------------------------------------------------------

QuaternionCoframe quaternionic_coframe() {
  QuaternionCoframe out;
  out.chart = hopf_chart();
  // chart expressions of the ambient coframe, with A = phi1 + phi2:
  //   a = cos^2(eta) dphi1 + sin^2(eta) dphi2
  //   b = cos(A) deta + (sin(A) sin(2 eta)/2)(dphi1 - dphi2)
  //   c = sin(A) deta - (cos(A) sin(2 eta)/2)(dphi1 - dphi2)
  out.a = KForm(
      out.chart, 1,
      [](std::span<const double> p) {
        const double c = std::cos(p[0]), s = std::sin(p[0]);
        return std::vector<double>{0.0, c * c, s * s};
      },
      [](std::span<const double> p) {
        Matrix g(3, 3);
        const double s2 = std::sin(2.0 * p[0]);
        g(1, 0) = -s2;
        g(2, 0) = s2;
        return g;
      });
  out.b = KForm(
      out.chart, 1,
      [](std::span<const double> p) {
        const double A = p[1] + p[2];
        const double half_s2 = 0.5 * std::sin(2.0 * p[0]);
        return std::vector<double>{std::cos(A), std::sin(A) * half_s2, -std::sin(A) * half_s2};
      },
      [](std::span<const double> p) {
        const double A = p[1] + p[2];
        const double cA = std::cos(A), sA = std::sin(A);
        const double s2 = std::sin(2.0 * p[0]), c2 = std::cos(2.0 * p[0]);
        Matrix g(3, 3);
        g(0, 1) = -sA;
        g(0, 2) = -sA;
        g(1, 0) = sA * c2;
        g(1, 1) = cA * s2 * 0.5;
        g(1, 2) = cA * s2 * 0.5;
        g(2, 0) = -g(1, 0);
        g(2, 1) = -g(1, 1);
        g(2, 2) = -g(1, 2);
        return g;
      });
  out.c = KForm(
      out.chart, 1,
      [](std::span<const double> p) {
        const double A = p[1] + p[2];
        const double half_s2 = 0.5 * std::sin(2.0 * p[0]);
        return std::vector<double>{std::sin(A), -std::cos(A) * half_s2, std::cos(A) * half_s2};
      },
      [](std::span<const double> p) {
        const double A = p[1] + p[2];
        const double cA = std::cos(A), sA = std::sin(A);
        const double s2 = std::sin(2.0 * p[0]), c2 = std::cos(2.0 * p[0]);
        Matrix g(3, 3);
        g(0, 1) = cA;
        g(0, 2) = cA;
        g(1, 0) = -cA * c2;
        g(1, 1) = sA * s2 * 0.5;
        g(1, 2) = sA * s2 * 0.5;
        g(2, 0) = -g(1, 0);
        g(2, 1) = -g(1, 1);
        g(2, 2) = -g(1, 2);
        return g;
      });
  return out;
}

// ---------------------------------------------------------------------------
// Surfaces of revolution
// ---------------------------------------------------------------------------

RevolutionProfile make_revolution_profile(double length, long alpha1, long alpha2,
                                          std::function<double(double)> f,
                                          std::function<double(double)> df,
                                          std::function<double(double)> d2f) {
  if (length <= 0.0) throw std::invalid_argument("RevolutionProfile: length must be positive");
  if (alpha1 < 1 || alpha2 < 1)
    throw std::invalid_argument("RevolutionProfile: cone orders must be >= 1");
  const double tol = 1e-8;
  if (std::fabs(f(0.0)) > tol || std::fabs(f(length)) > tol)
    throw std::invalid_argument("RevolutionProfile: f must vanish at both endpoints");
  if (std::fabs(df(0.0) - 1.0 / static_cast<double>(alpha1)) > tol)
    throw std::invalid_argument("RevolutionProfile: f'(0) must equal 1/alpha1");
  if (std::fabs(df(length) + 1.0 / static_cast<double>(alpha2)) > tol)
    throw std::invalid_argument("RevolutionProfile: f'(L) must equal -1/alpha2");
  for (int i = 1; i < 1000; ++i) {
    const double r = length * static_cast<double>(i) / 1000.0;
    if (!(f(r) > 0.0))
      throw std::invalid_argument("RevolutionProfile: f must be positive on (0, L)");
  }
  return RevolutionProfile{length, alpha1, alpha2, std::move(f), std::move(df), std::move(d2f)};
}

RevolutionProfile round_sphere_profile() {
  return make_revolution_profile(
      kPi, 1, 1, [](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
      [](double r) { return -std::sin(r); });
}

RevolutionProfile spindle_profile(long alpha) {
  const double a = static_cast<double>(alpha);
  return make_revolution_profile(
      kPi, alpha, alpha, [a](double r) { return std::sin(r) / a; },
      [a](double r) { return std::cos(r) / a; }, [a](double r) { return -std::sin(r) / a; });
}

RevolutionProfile football_profile(long a1, long a2) {
  // f(r) = sin(r) (p + q r): f'(0) = p = 1/a1, f'(pi) = -(p + q pi) = -1/a2
  const double p = 1.0 / static_cast<double>(a1);
  const double q = (1.0 / static_cast<double>(a2) - p) / kPi;
  return make_revolution_profile(
      kPi, a1, a2, [p, q](double r) { return std::sin(r) * (p + q * r); },
      [p, q](double r) { return std::cos(r) * (p + q * r) + q * std::sin(r); },
      [p, q](double r) { return -std::sin(r) * (p + q * r) + 2.0 * q * std::cos(r); });
}

CheckReport gauss_bonnet_revolution(const RevolutionProfile& profile, const QuadratureSpec& spec,
                                    double tolerance) {
  ChartPtr chart = make_chart("revolution", {"r", "phi"},
                              {Interval{0.0, profile.length}, Interval{0.0, kTwoPi}},
                              "r in {0, L}: cone points");
  auto f = profile.f;
  auto d2f = profile.d2f;
  // K dA with K = -f''/f and dA = f dr ^ dphi; quadrature nodes are interior,
  // where f > 0
  const KForm k_da(chart, 2, [f, d2f](std::span<const double> p) {
    const double kappa = -d2f(p[0]) / f(p[0]);
    return std::vector<double>{kappa * f(p[0])};
  });
  Box box{chart->bounds()};
  const ParametrizedChain chain = make_chain(std::move(box), identity_map(chart), 1);
  const IntegrationResult total = integrate_form(k_da, chain, spec);

  std::vector<BigInt> cones;
  if (profile.alpha1 >= 2) cones.emplace_back(profile.alpha1);
  if (profile.alpha2 >= 2) cones.emplace_back(profile.alpha2);
  const Rational chi = chi_orb(make_orbifold(0, std::move(cones)));
  const double expected = kTwoPi * static_cast<double>(chi);

  std::ostringstream detail;
  detail << "total curvature vs 2 pi chi_orb, chi_orb = " << to_fraction_string(chi)
         << ", quadrature error estimate " << total.error_estimate;
  return make_check("gauss_bonnet_revolution", total.value, expected, tolerance, detail.str());
}

}  // namespace volx
