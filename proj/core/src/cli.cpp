#include "volx/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "volx/catalog.hpp"
#include "volx/checks.hpp"
#include "volx/errors.hpp"
#include "volx/expr.hpp"
#include "volx/seifert.hpp"

namespace volx::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

struct Emission {
  ordered_json config;
  ordered_json results = ordered_json::object();
  std::vector<CheckReport> reports;
  std::vector<std::string> report_provenance;  // parallel to reports
  std::vector<double> report_error_estimate;   // NaN = none

  void add(CheckReport r, std::string provenance = "sampled",
           double error_estimate = std::numeric_limits<double>::quiet_NaN()) {
    reports.push_back(std::move(r));
    report_provenance.push_back(std::move(provenance));
    report_error_estimate.push_back(error_estimate);
  }
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ordered_json check_value_json(const CheckValue& v) {
  if (v.kind == CheckValue::Kind::Exact) return to_fraction_string(v.exact);
  return v.real;
}

ordered_json report_json(const CheckReport& r, const std::string& provenance, double err) {
  ordered_json j;
  j["name"] = r.name;
  j["computed"] = check_value_json(r.computed);
  j["expected"] = check_value_json(r.expected);
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  j["provenance"] = provenance;
  if (std::isfinite(err)) j["error_estimate"] = err;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';  // doubled quote
    out += c;
  }
  out += "\"";
  return out;
}

void emit(const Emission& em, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    os << "name,computed,expected,tolerance,passed,detail,provenance,error_estimate\n";
    for (std::size_t i = 0; i < em.reports.size(); ++i) {
      const CheckReport& r = em.reports[i];
      os << csv_escape(r.name) << ',' << csv_escape(r.computed.to_string()) << ','
         << csv_escape(r.expected.to_string()) << ',' << r.tolerance << ','
         << (r.passed ? "true" : "false") << ',' << csv_escape(r.detail) << ','
         << em.report_provenance[i] << ',';
      if (std::isfinite(em.report_error_estimate[i])) os << em.report_error_estimate[i];
      os << '\n';
    }
    return;
  }
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["config"] = em.config;
  j["metadata"] = ordered_json{{"timestamp", utc_timestamp()}};
  j["results"] = em.results;
  auto arr = ordered_json::array();
  for (std::size_t i = 0; i < em.reports.size(); ++i)
    arr.push_back(report_json(em.reports[i], em.report_provenance[i],
                              em.report_error_estimate[i]));
  j["reports"] = arr;
  os << j.dump(2) << '\n';
}

ordered_json quadrature_result_json(const IntegrationResult& r, const std::string& provenance) {
  ordered_json j;
  j["value"] = r.value;
  j["error_estimate"] = r.error_estimate;
  j["evaluations"] = r.evaluations;
  j["provenance"] = provenance;
  return j;
}

struct CommonOptions {
  std::string format = "json";
  std::string output;
  std::string plot_data;
  int order = 32;
  long mc_samples = 0;  // 0 = Gauss-Legendre
  std::uint64_t mc_seed = 42;
};

QuadratureSpec make_spec(const CommonOptions& opt) {
  if (opt.mc_samples > 0) return MonteCarlo{opt.mc_samples, opt.mc_seed};
  return GaussLegendre{opt.order};
}

std::string spec_provenance(const CommonOptions& opt) {
  return opt.mc_samples > 0 ? "monte_carlo" : "quadrature";
}

// "a:k,a:k,..." with a = 1 meaning a smooth zero
std::vector<ZeroDatum> parse_zero_list(const std::string& text) {
  std::vector<ZeroDatum> zeros;
  if (text.empty()) return zeros;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--zeros: expected 'alpha:k' entries, got '" + item + "'");
    ZeroDatum z;
    z.cone_order = BigInt(item.substr(0, colon));
    z.k = BigInt(item.substr(colon + 1));
    if (z.cone_order < 1) throw std::invalid_argument("--zeros: alpha must be >= 1");
    zeros.push_back(std::move(z));
  }
  return zeros;
}

std::vector<BigInt> parse_cone_list(const std::string& text) {
  std::vector<BigInt> cones;
  if (text.empty()) return cones;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) cones.emplace_back(item);
  return cones;
}

// profile helpers ------------------------------------------------------------

HProfile hprofile_from_expr(const std::string& text) {
  const expr::ExprPtr H = expr::parse(text);
  const expr::ExprPtr dH = expr::derivative(H);
  return make_hprofile([H](double u) { return expr::eval(H, u); },
                       [dH](double u) { return expr::eval(dH, u); });
}

RevolutionProfile revolution_from_expr(const std::string& text, double length, long a1,
                                       long a2) {
  const expr::ExprPtr f = expr::parse(text);
  const expr::ExprPtr df = expr::derivative(f);
  const expr::ExprPtr d2f = expr::derivative(df);
  return make_revolution_profile(
      length, a1, a2, [f](double r) { return expr::eval(f, r); },
      [df](double r) { return expr::eval(df, r); },
      [d2f](double r) { return expr::eval(d2f, r); });
}

// subcommand handlers --------------------------------------------------------

void run_identity(Emission& em, const CommonOptions&, int dim, int n, int seeds, int points) {
  if (dim < 2 * n + 1)
    throw std::invalid_argument("identity: need dim >= 2n + 1 (degree-(2n+1) forms vanish)");
  em.add(abbondandolo_suite(dim, n, seeds, points), "sampled");
}

void run_hopf(Emission& em, const CommonOptions& opt, const std::string& what, double r_max) {
  const QuadratureSpec spec = make_spec(opt);
  if (what == "volume") {
    const HopfBundle hopf = hopf_bundle();
    const IntegrationResult vol =
        integrate_form(wedge(hopf.alpha, ext_d(hopf.alpha)), s3_chain(), spec);
    em.results["volume"] = quadrature_result_json(vol, spec_provenance(opt));
    em.add(make_check("hopf_volume", vol.value, 1.0, 1e-8,
                      "int alpha ^ d alpha over S^3, regular fibre period 1"),
           spec_provenance(opt), vol.error_estimate);
  } else if (what == "section") {
    const FluxResult flux = hopf_section_flux(r_max, spec);
    em.results["section_flux"] = quadrature_result_json(flux.integral, spec_provenance(opt));
    em.results["truncation_bound"] = flux.truncation_bound;
    std::ostringstream detail;
    detail << "curvature integral over the section, r <= " << r_max
           << "; closed-form truncation bound " << flux.truncation_bound;
    em.add(make_check("hopf_section_flux", flux.integral.value, 1.0, 1e-5, detail.str()),
           spec_provenance(opt), flux.integral.error_estimate + flux.truncation_bound);
  } else if (what == "euler") {
    const SeifertData hopf_seifert = make_seifert_data(0, {{BigInt(1), BigInt(1)}});
    const Rational e = euler_number(hopf_seifert);
    em.results["euler"] = to_fraction_string(e);
    em.results["provenance"] = "exact";
    const HopfBundle hopf = hopf_bundle();
    const IntegrationResult vol =
        integrate_form(wedge(hopf.alpha, ext_d(hopf.alpha)), s3_chain(), spec);
    em.add(make_check("hopf_euler_vs_volume", -vol.value, static_cast<double>(e), 1e-8,
                      "minus the quadrature volume vs the exact Euler number"),
           spec_provenance(opt), vol.error_estimate);
  } else {
    throw std::invalid_argument("hopf: --what must be volume, section or euler");
  }
}

void run_seifert(Emission& em, const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::invalid_argument("seifert: cannot open '" + json_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const SeifertData s = seifert_from_json(buffer.str());
  const Rational e = euler_number(s);
  const Rational vol = vol_from_seifert(s);
  const IntegralityCertificate cert = integrality_certificate(s);
  em.results["euler"] = to_fraction_string(e);
  em.results["vol"] = to_fraction_string(vol);
  em.results["m"] = static_cast<long long>(cert.m);
  em.results["m_times_vol"] = to_fraction_string(cert.product);
  em.results["provenance"] = "exact";
  em.add(make_check("weinstein_integrality", Rational(rational_den(cert.product)), Rational(1),
                    "m vol_X must be an integer (denominator 1)"),
         "exact");
}

void run_orbifold(Emission& em, int genus, const std::string& cones) {
  const Orbifold2D o = make_orbifold(genus, parse_cone_list(cones));
  const Rational chi = chi_orb(o);
  const SeifertData stb = unit_tangent_bundle_invariants(o);
  em.results["chi_orb"] = to_fraction_string(chi);
  auto pairs = ordered_json::array();
  for (const auto& [a, b] : stb.pairs)
    pairs.push_back({static_cast<long long>(a), static_cast<long long>(b)});
  em.results["stb"] = ordered_json{{"genus", stb.genus}, {"pairs", pairs}};
  em.results["provenance"] = "exact";
  em.add(make_check("euler_of_unit_tangent_bundle", euler_number(stb), chi,
                    "Euler number of the unit tangent bundle vs chi_orb"),
         "exact");
}

void run_poincare_hopf(Emission& em, int genus, const std::string& cones,
                       const std::string& zeros_text) {
  const Orbifold2D o = make_orbifold(genus, parse_cone_list(cones));
  const std::vector<ZeroDatum> zeros = parse_zero_list(zeros_text);
  const CheckReport r = poincare_hopf_check(o, zeros);
  em.results["chi_orb"] = to_fraction_string(chi_orb(o));
  em.results["index_sum"] = r.computed.to_string();
  em.results["provenance"] = "exact";
  em.add(r, "exact");
}

void run_gauss_bonnet(Emission& em, const CommonOptions& opt, const std::string& profile_text,
                      double length, long a1, long a2) {
  const RevolutionProfile profile = revolution_from_expr(profile_text, length, a1, a2);
  const CheckReport r = gauss_bonnet_revolution(profile, make_spec(opt), 1e-6);
  em.results["total_curvature"] = r.computed.real;
  std::vector<BigInt> cone_list;
  if (a1 >= 2) cone_list.emplace_back(a1);
  if (a2 >= 2) cone_list.emplace_back(a2);
  em.results["chi_orb"] = to_fraction_string(chi_orb(make_orbifold(0, cone_list)));
  em.add(r, spec_provenance(opt));

  if (!opt.plot_data.empty()) {
    std::ofstream plot(opt.plot_data);
    plot << "r,K\n";
    for (int i = 1; i < 256; ++i) {
      const double r_val = length * i / 256.0;
      plot << r_val << ',' << -profile.d2f(r_val) / profile.f(r_val) << '\n';
    }
  }
}

void run_disc(Emission& em, const CommonOptions& opt, const std::string& h_text,
              const std::string& method) {
  const HProfile profile = hprofile_from_expr(h_text);
  const QuadratureSpec spec = make_spec(opt);
  if (method == "direct" || method == "both") {
    const IntegrationResult direct = disc_volume(profile, DiscMethod::direct, spec);
    em.results["direct"] = quadrature_result_json(direct, spec_provenance(opt));
  }
  if (method == "return-time" || method == "both") {
    const IntegrationResult rt = disc_volume(profile, DiscMethod::return_time, spec);
    em.results["return_time"] = quadrature_result_json(rt, spec_provenance(opt));
  }
  if (method == "both") {
    const double direct = em.results["direct"]["value"].get<double>();
    const double rt = em.results["return_time"]["value"].get<double>();
    const double err = em.results["direct"]["error_estimate"].get<double>() +
                       em.results["return_time"]["error_estimate"].get<double>();
    // 1e-6 under the Gauss-Legendre default; Monte Carlo gets its own noise
    const double tol = std::max(1e-6, 2.0 * err);
    em.add(make_check("disc_volume_agreement", direct, rt, tol,
                      "solid-torus integral vs return-time integral"),
           spec_provenance(opt));
  } else if (method != "direct" && method != "return-time") {
    throw std::invalid_argument("disc: --method must be direct, return-time or both");
  }

  if (!opt.plot_data.empty()) {
    std::ofstream plot(opt.plot_data);
    plot << "r,tau\n";
    for (int i = 0; i <= 256; ++i) {
      const double r_val = i / 256.0;
      const double u = r_val * r_val;
      plot << r_val << ',' << profile.H(u) - u * profile.dH(u) << '\n';
    }
  }
}

void run_beltrami(Emission& em, double a1, double a2, const std::string& check) {
  const BeltramiFamily fam = beltrami_family(a1, a2);
  const std::vector<Point> pts100 = sample_interior_points(fam.chart, 100, 5, 0.05);
  const std::vector<Point> pts200 = sample_interior_points(fam.chart, 200, 6, 0.05);
  if (check == "pullback") {
    MetricField round{ambient_chart(),
                      [](std::span<const double>) { return Matrix::identity(4); }};
    bool rank_warning = false;
    const MetricField pulled = pullback_metric(fam.deformation, round, &rank_warning);
    double worst = 0.0;
    for (const Point& p : pts100) {
      const Matrix a = fam.metric.g(p.x);
      const Matrix b = pulled.g(p.x);
      for (std::size_t i = 0; i < a.a.size(); ++i)
        worst = std::max(worst, std::fabs(a.a[i] - b.a[i]));
    }
    em.add(make_check("beltrami_metric_pullback", worst, 0.0, 1e-8,
                      "closed form vs deformation pullback of the round metric, entrywise"),
           "sampled");
  } else if (check == "geodesible") {
    em.add(geodesibility_residual(fam.alpha, fam.unit_field, pts200, 1e-5), "sampled");
  } else if (check == "contact") {
    const KForm vol3 = wedge(fam.alpha, ext_d(fam.alpha));
    double min_abs = std::numeric_limits<double>::infinity();
    for (const Point& p : pts200) min_abs = std::min(min_abs, std::fabs(vol3.coeffs_at(p.x)[0]));
    std::ostringstream detail;
    detail << "min |alpha ^ d alpha| over 200 samples = " << min_abs
           << "; reported, not asserted (contactness away from the sample set is open)";
    em.results["contact_witness"] = min_abs;
    em.add(make_check("contact_condition_report", min_abs, min_abs, 0.0, detail.str()),
           "sampled");
  } else {
    throw std::invalid_argument("beltrami: --check must be pullback, geodesible or contact");
  }
}

void run_cartan(Emission& em, const CommonOptions& opt, const std::string& check) {
  const QuaternionCoframe frame = quaternionic_coframe();
  const std::vector<Point> pts = sample_interior_points(frame.chart, 200, 11, 0.01);
  if (check == "residual") {
    em.add(cartan_residual(frame.b, frame.c, pts), "sampled");
  } else if (check == "alpha") {
    const std::vector<Point> pts100 = sample_interior_points(frame.chart, 100, 12, 0.01);
    const KForm solved = cartan_alpha_form(frame.b, frame.c);
    const KForm frozen = 2.0 * frame.a;  // frozen sign convention: alpha = +2a
    double worst = 0.0;
    for (const Point& p : pts100) {
      const std::vector<double> s = solved.coeffs_at(p.x);
      const std::vector<double> f = frozen.coeffs_at(p.x);
      for (std::size_t i = 0; i < s.size(); ++i)
        worst = std::max(worst, std::fabs(s[i] - f[i]));
    }
    em.add(make_check("cartan_solved_alpha", worst, 0.0, 1e-8,
                      "pointwise least-squares alpha vs +2a"),
           "sampled");
  } else if (check == "bott") {
    const VectorFieldRepr X = cartan_kernel_field(frame.b, frame.c);
    em.add(bott_relation(frame.b, frame.c, X, s3_chain(), make_spec(opt)),
           spec_provenance(opt));
  } else {
    throw std::invalid_argument("cartan: --check must be residual, alpha or bott");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"numerical exterior calculus and exact invariants for geodesible flows"};
  app.name("volx");
  app.require_subcommand(1);

  CommonOptions opt;
  app.add_option("--format", opt.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", opt.output, "write the report to this file instead of stdout");
  app.add_option("--order", opt.order, "Gauss-Legendre order per axis")->check(CLI::Range(2, 64));
  app.add_option("--mc-samples", opt.mc_samples,
                 "use Monte Carlo with this many samples instead of Gauss-Legendre");
  app.add_option("--mc-seed", opt.mc_seed, "Monte Carlo seed");
  app.add_option("--plot-data", opt.plot_data, "write (x, y) sample tables to this CSV file");

  // identity
  auto* identity = app.add_subcommand("identity", "randomized identity residual suite");
  int id_dim = 3, id_n = 1, id_seeds = 50, id_points = 20;
  identity->add_option("--dim", id_dim, "chart dimension")->check(CLI::IsMember({3, 5}));
  identity->add_option("--n", id_n, "wedge power n")->check(CLI::Range(0, 2));
  identity->add_option("--seeds", id_seeds, "number of random form pairs");
  identity->add_option("--points", id_points, "sample points per pair");

  // hopf
  auto* hopf = app.add_subcommand("hopf", "Hopf fibration invariants");
  std::string hopf_what = "volume";
  double hopf_rmax = 1e3;
  hopf->add_option("--what", hopf_what, "volume, section or euler");
  hopf->add_option("--rmax", hopf_rmax, "truncation radius for the section integral");

  // seifert
  auto* seifert = app.add_subcommand("seifert", "exact Seifert invariants from JSON");
  std::string seifert_json;
  seifert->add_option("--json", seifert_json, "path to {\"genus\": g, \"pairs\": [[a,b],...]}")
      ->required();

  // orbifold
  auto* orbifold = app.add_subcommand("orbifold", "orbifold Euler characteristic and STB data");
  int orb_genus = 0;
  std::string orb_cones;
  orbifold->add_option("--genus", orb_genus, "genus")->required();
  orbifold->add_option("--cones", orb_cones, "comma-separated cone orders (each >= 2)");

  // poincare-hopf
  auto* ph = app.add_subcommand("poincare-hopf", "index sum vs chi_orb, exactly");
  int ph_genus = 0;
  std::string ph_cones, ph_zeros;
  ph->add_option("--genus", ph_genus, "genus")->required();
  ph->add_option("--cones", ph_cones, "comma-separated cone orders");
  ph->add_option("--zeros", ph_zeros, "zeros as 'alpha:k,...' with alpha = 1 for smooth points");

  // gauss-bonnet
  auto* gb = app.add_subcommand("gauss-bonnet", "total curvature of a surface of revolution");
  std::string gb_profile;
  double gb_length = kPi;
  long gb_a1 = 1, gb_a2 = 1;
  gb->add_option("--profile", gb_profile, "profile f(r) as an expression in r")->required();
  gb->add_option("--length", gb_length, "profile length L");
  gb->add_option("--alpha1", gb_a1, "cone order at r = 0");
  gb->add_option("--alpha2", gb_a2, "cone order at r = L");

  // disc
  auto* disc = app.add_subcommand("disc", "disc-map contact form volumes");
  std::string disc_h, disc_method = "both";
  disc->add_option("--H", disc_h, "profile H as an expression in u = r^2")->required();
  disc->add_option("--method", disc_method, "direct, return-time or both");

  // beltrami
  auto* beltrami = app.add_subcommand("beltrami", "Beltrami metric family checks");
  double bel_a1 = 1.2, bel_a2 = 0.8;
  std::string bel_check = "pullback";
  beltrami->add_option("--a1", bel_a1, "first stretch parameter");
  beltrami->add_option("--a2", bel_a2, "second stretch parameter");
  beltrami->add_option("--check", bel_check, "pullback, geodesible or contact");

  // cartan
  auto* cartan = app.add_subcommand("cartan", "quaternionic Cartan structure checks");
  std::string cartan_check = "residual";
  cartan->add_option("--check", cartan_check, "residual, alpha or bott");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  Emission em;
  em.config["subcommand"] = app.get_subcommands().front()->get_name();
  em.config["order"] = opt.order;
  if (opt.mc_samples > 0) {
    em.config["mc_samples"] = opt.mc_samples;
    em.config["mc_seed"] = opt.mc_seed;
  }

  try {
    if (identity->parsed()) {
      em.config["dim"] = id_dim;
      em.config["n"] = id_n;
      em.config["seeds"] = id_seeds;
      em.config["points"] = id_points;
      run_identity(em, opt, id_dim, id_n, id_seeds, id_points);
    } else if (hopf->parsed()) {
      em.config["what"] = hopf_what;
      if (hopf_what == "section") em.config["rmax"] = hopf_rmax;
      run_hopf(em, opt, hopf_what, hopf_rmax);
    } else if (seifert->parsed()) {
      em.config["json"] = seifert_json;
      run_seifert(em, seifert_json);
    } else if (orbifold->parsed()) {
      em.config["genus"] = orb_genus;
      em.config["cones"] = orb_cones;
      run_orbifold(em, orb_genus, orb_cones);
    } else if (ph->parsed()) {
      em.config["genus"] = ph_genus;
      em.config["cones"] = ph_cones;
      em.config["zeros"] = ph_zeros;
      run_poincare_hopf(em, ph_genus, ph_cones, ph_zeros);
    } else if (gb->parsed()) {
      em.config["profile"] = gb_profile;
      em.config["length"] = gb_length;
      em.config["alpha1"] = gb_a1;
      em.config["alpha2"] = gb_a2;
      run_gauss_bonnet(em, opt, gb_profile, gb_length, gb_a1, gb_a2);
    } else if (disc->parsed()) {
      em.config["H"] = disc_h;
      em.config["method"] = disc_method;
      run_disc(em, opt, disc_h, disc_method);
    } else if (beltrami->parsed()) {
      em.config["a1"] = bel_a1;
      em.config["a2"] = bel_a2;
      em.config["check"] = bel_check;
      run_beltrami(em, bel_a1, bel_a2, bel_check);
    } else if (cartan->parsed()) {
      em.config["check"] = cartan_check;
      run_cartan(em, opt, cartan_check);
    }
  } catch (const ParseError& e) {
    err << "expression error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (!opt.output.empty()) {
    std::ofstream file(opt.output);
    if (!file) {
      err << "cannot open output file '" << opt.output << "'\n";
      return 2;
    }
    emit(em, opt.format, file);
  } else {
    emit(em, opt.format, out);
  }

  for (const CheckReport& r : em.reports)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace volx::cli
