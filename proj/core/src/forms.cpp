#include "volx/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "volx/errors.hpp"

namespace volx {

namespace {

std::mutex table_mutex;

std::vector<std::vector<int>> build_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (k == 0) out.assign(1, {});
  return out;
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* op) {
  if (a.get() != b.get())
    throw ChartMismatch(std::string(op) + ": operands live on different charts");
}

}  // namespace

const std::vector<std::vector<int>>& increasing_indices(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(table_mutex);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_subsets(n, k)).first;
  return it->second;
}

int multi_index_position(int n, const std::vector<int>& idx) {
  const auto& table = increasing_indices(n, static_cast<int>(idx.size()));
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] == idx) return static_cast<int>(i);
  throw std::invalid_argument("multi_index_position: index not found");
}

int shuffle_sign(const std::vector<int>& left, const std::vector<int>& right) {
  int inversions = 0;
  for (int l : left)
    for (int r : right)
      if (l > r) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

KForm::KForm(ChartPtr chart, int degree, CoeffFn coeffs, CoeffGradFn coeff_grads)
    : chart_(std::move(chart)),
      degree_(degree),
      coeffs_(std::move(coeffs)),
      coeff_grads_(std::move(coeff_grads)) {
  if (degree_ < 0) throw DegreeError("KForm: negative degree");
  n_coeffs_ = static_cast<int>(increasing_indices(chart_->dim(), degree_).size());
  if (degree_ > chart_->dim()) n_coeffs_ = 0;
}

std::vector<double> KForm::coeffs_at(std::span<const double> x) const {
  if (n_coeffs_ == 0) return {};
  std::vector<double> c = coeffs_(x);
  if (static_cast<int>(c.size()) != n_coeffs_)
    throw NumericError("KForm: coefficient function returned " + std::to_string(c.size()) +
                       " entries, expected " + std::to_string(n_coeffs_));
  return c;
}

Matrix KForm::coeff_grads_at(std::span<const double> x) const {
  if (n_coeffs_ == 0) return Matrix(0, chart_->dim());
  if (coeff_grads_) return coeff_grads_(x);
  const int n = chart_->dim();
  Matrix g(n_coeffs_, n);
  std::vector<double> pt(x.begin(), x.end());
  for (int j = 0; j < n; ++j) {
    const double h = fd_step(x[j]);
    const double xj = pt[j];
    pt[j] = xj + h;
    const std::vector<double> up = coeffs_(pt);
    pt[j] = xj - h;
    const std::vector<double> dn = coeffs_(pt);
    pt[j] = xj;
    for (int c = 0; c < n_coeffs_; ++c) g(c, j) = (up[c] - dn[c]) / (2.0 * h);
  }
  return g;
}

KForm make_kform(ChartPtr chart, int degree, CoeffFn coeffs, CoeffGradFn coeff_grads) {
  if (degree > chart->dim())
    throw DegreeError("make_kform: degree exceeds chart dimension");
  return KForm(std::move(chart), degree, std::move(coeffs), std::move(coeff_grads));
}

KForm zero_form(ChartPtr chart, int degree) {
  const int n = chart->dim();
  const int m = degree <= n ? static_cast<int>(increasing_indices(n, degree).size()) : 0;
  return KForm(
      std::move(chart), degree,
      [m](std::span<const double>) { return std::vector<double>(m, 0.0); },
      [m, n](std::span<const double>) { return Matrix(m, n); });
}

KForm constant_form(ChartPtr chart, int degree, std::vector<double> coeffs) {
  const int n = chart->dim();
  const int m = static_cast<int>(increasing_indices(n, degree).size());
  if (static_cast<int>(coeffs.size()) != m)
    throw std::invalid_argument("constant_form: wrong coefficient count");
  return KForm(
      std::move(chart), degree,
      [coeffs](std::span<const double>) { return coeffs; },
      [m, n](std::span<const double>) { return Matrix(m, n); });
}

KForm coordinate_differential(ChartPtr chart, int i) {
  std::vector<double> c(static_cast<std::size_t>(chart->dim()), 0.0);
  c[static_cast<std::size_t>(i)] = 1.0;
  return constant_form(std::move(chart), 1, std::move(c));
}

KForm as_kform(const ScalarField& f) {
  CoeffGradFn grads;
  if (f.grad) {
    auto g = f.grad;
    const int n = f.chart->dim();
    grads = [g, n](std::span<const double> x) {
      Matrix m(1, n);
      const std::vector<double> v = g(x);
      for (int j = 0; j < n; ++j) m(0, j) = v[j];
      return m;
    };
  }
  auto ev = f.eval;
  return KForm(f.chart, 0,
               [ev](std::span<const double> x) { return std::vector<double>{ev(x)}; },
               std::move(grads));
}

ScalarField as_scalar(const KForm& f) {
  if (f.degree() != 0) throw DegreeError("as_scalar: degree must be 0");
  KForm copy = f;
  VectorFn grad;
  if (f.has_analytic_grads()) {
    grad = [copy](std::span<const double> x) {
      const Matrix g = copy.coeff_grads_at(x);
      std::vector<double> v(static_cast<std::size_t>(g.cols));
      for (int j = 0; j < g.cols; ++j) v[j] = g(0, j);
      return v;
    };
  }
  return ScalarField{f.chart(),
                     [copy](std::span<const double> x) { return copy.coeffs_at(x)[0]; },
                     std::move(grad)};
}

namespace {

KForm combine(const KForm& a, const KForm& b, double sb) {
  require_same_chart(a.chart(), b.chart(), "form sum");
  if (a.degree() != b.degree()) throw DegreeError("form sum: degrees differ");
  CoeffGradFn grads;
  if (a.has_analytic_grads() && b.has_analytic_grads()) {
    KForm ca = a, cb = b;
    grads = [ca, cb, sb](std::span<const double> x) {
      Matrix ga = ca.coeff_grads_at(x);
      const Matrix gb = cb.coeff_grads_at(x);
      for (std::size_t i = 0; i < ga.a.size(); ++i) ga.a[i] += sb * gb.a[i];
      return ga;
    };
  }
  KForm ca = a, cb = b;
  return KForm(
      a.chart(), a.degree(),
      [ca, cb, sb](std::span<const double> x) {
        std::vector<double> va = ca.coeffs_at(x);
        const std::vector<double> vb = cb.coeffs_at(x);
        for (std::size_t i = 0; i < va.size(); ++i) va[i] += sb * vb[i];
        return va;
      },
      std::move(grads));
}

}  // namespace

KForm operator+(const KForm& a, const KForm& b) { return combine(a, b, 1.0); }
KForm operator-(const KForm& a, const KForm& b) { return combine(a, b, -1.0); }

KForm operator*(double s, const KForm& a) {
  CoeffGradFn grads;
  if (a.has_analytic_grads()) {
    KForm ca = a;
    grads = [ca, s](std::span<const double> x) {
      Matrix g = ca.coeff_grads_at(x);
      for (double& v : g.a) v *= s;
      return g;
    };
  }
  KForm ca = a;
  return KForm(
      a.chart(), a.degree(),
      [ca, s](std::span<const double> x) {
        std::vector<double> v = ca.coeffs_at(x);
        for (double& c : v) c *= s;
        return v;
      },
      std::move(grads));
}

KForm operator*(const ScalarField& f, const KForm& a) {
  require_same_chart(f.chart, a.chart(), "scalar * form");
  CoeffGradFn grads;
  if (f.grad && a.has_analytic_grads()) {
    KForm ca = a;
    ScalarField cf = f;
    grads = [cf, ca](std::span<const double> x) {
      const double fv = cf.eval(x);
      const std::vector<double> fg = cf.grad(x);
      Matrix g = ca.coeff_grads_at(x);
      const std::vector<double> c = ca.coeffs_at(x);
      for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) g(i, j) = fv * g(i, j) + fg[j] * c[i];
      return g;
    };
  }
  KForm ca = a;
  ScalarField cf = f;
  return KForm(
      a.chart(), a.degree(),
      [cf, ca](std::span<const double> x) {
        const double fv = cf.eval(x);
        std::vector<double> v = ca.coeffs_at(x);
        for (double& c : v) c *= fv;
        return v;
      },
      std::move(grads));
}

// ---------------------------------------------------------------------------
// wedge
// ---------------------------------------------------------------------------

namespace {

struct WedgeTerm {
  int out;
  int pos_a;
  int pos_b;
  int sign;
};

// Plan for equal degrees: unordered splittings {S,T} of each output index,
// with S the side containing the smallest element. Accumulating
// sign_st*A_S*B_T + sign_ts*A_T*B_S per entry makes wedge(a,b) and
// (-1)^{k^2} wedge(b,a) bit-identical, since IEEE addition and multiplication
// commute.
struct WedgePairTerm {
  int out;
  int pos_s;
  int pos_t;
  int sign_st;
  int sign_ts;
};

struct WedgePlan {
  std::vector<WedgeTerm> terms;       // used when deg_a != deg_b
  std::vector<WedgePairTerm> pairs;   // used when deg_a == deg_b > 0
  bool equal_degrees = false;
};

const WedgePlan& wedge_plan(int n, int ka, int kb) {
  static std::map<std::tuple<int, int, int>, WedgePlan> cache;
  std::lock_guard<std::mutex> lock(table_mutex);
  auto key = std::make_tuple(n, ka, kb);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  WedgePlan plan;
  plan.equal_degrees = (ka == kb && ka > 0);
  const auto& outs = build_subsets(n, ka + kb);
  const auto& atab = build_subsets(n, ka);
  const auto& btab = build_subsets(n, kb);
  auto pos_in = [](const std::vector<std::vector<int>>& tab, const std::vector<int>& idx) {
    for (std::size_t i = 0; i < tab.size(); ++i)
      if (tab[i] == idx) return static_cast<int>(i);
    return -1;
  };

  for (std::size_t oi = 0; oi < outs.size(); ++oi) {
    const std::vector<int>& I = outs[oi];
    const int total = static_cast<int>(I.size());
    std::vector<int> mask(static_cast<std::size_t>(ka), 0);
    // enumerate ka-subsets S of I in lexicographic order
    std::vector<int> sel(static_cast<std::size_t>(ka));
    for (int i = 0; i < ka; ++i) sel[i] = i;
    bool more = (ka <= total);
    if (ka == 0) {
      std::vector<int> T = I;
      plan.terms.push_back({static_cast<int>(oi), 0, pos_in(btab, T), 1});
      more = false;
    }
    while (more) {
      std::vector<int> S, T;
      S.reserve(ka);
      std::size_t si = 0;
      for (int i = 0; i < total; ++i) {
        if (si < sel.size() && sel[si] == i) {
          S.push_back(I[i]);
          ++si;
        } else {
          T.push_back(I[i]);
        }
      }
      const int s_st = shuffle_sign(S, T);
      if (!plan.equal_degrees) {
        plan.terms.push_back({static_cast<int>(oi), pos_in(atab, S), pos_in(btab, T), s_st});
      } else if (S.empty() || S[0] == I[0]) {
        // S is the canonical representative of the unordered pair {S,T}
        const int s_ts = shuffle_sign(T, S);
        plan.pairs.push_back(
            {static_cast<int>(oi), pos_in(atab, S), pos_in(btab, T), s_st, s_ts});
      }
      // next ka-subset
      int i = ka - 1;
      while (i >= 0 && sel[i] == total - ka + i) --i;
      if (i < 0) break;
      ++sel[i];
      for (int j = i + 1; j < ka; ++j) sel[j] = sel[j - 1] + 1;
    }
  }
  it = cache.emplace(key, std::move(plan)).first;
  return it->second;
}

std::vector<double> apply_wedge_plan(const WedgePlan& plan, int n_out,
                                     const std::vector<double>& av,
                                     const std::vector<double>& bv) {
  std::vector<double> out(static_cast<std::size_t>(n_out), 0.0);
  if (!plan.equal_degrees) {
    for (const WedgeTerm& t : plan.terms)
      out[static_cast<std::size_t>(t.out)] += t.sign * av[t.pos_a] * bv[t.pos_b];
  } else {
    // S != T always holds here (disjoint nonempty subsets), so both halves
    // of the unordered pair contribute
    for (const WedgePairTerm& t : plan.pairs) {
      const double term =
          t.sign_st * av[t.pos_s] * bv[t.pos_t] + t.sign_ts * av[t.pos_t] * bv[t.pos_s];
      out[static_cast<std::size_t>(t.out)] += term;
    }
  }
  return out;
}

}  // namespace

KForm wedge(const KForm& a, const KForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  const int n = a.chart()->dim();
  const int ka = a.degree(), kb = b.degree();
  if (ka + kb > n) throw DegreeError("wedge: degree overflow (k + l > dim)");

  // delegate larger-degree-first products to the mirrored computation so the
  // graded commutativity relation holds bit-exactly
  if (ka > kb) {
    KForm w = wedge(b, a);
    const double sign = (ka % 2 == 1 && kb % 2 == 1) ? -1.0 : 1.0;
    return sign * w;
  }

  const WedgePlan* plan = &wedge_plan(n, ka, kb);
  const int n_out = static_cast<int>(increasing_indices(n, ka + kb).size());

  // a has the smaller (or equal) degree here
  KForm ca = a, cb = b;
  CoeffGradFn grads;
  if (a.has_analytic_grads() && b.has_analytic_grads()) {
    grads = [ca, cb, plan, n_out, n](std::span<const double> x) {
      const std::vector<double> av = ca.coeffs_at(x);
      const std::vector<double> bv = cb.coeffs_at(x);
      const Matrix ga = ca.coeff_grads_at(x);
      const Matrix gb = cb.coeff_grads_at(x);
      Matrix g(n_out, n);
      auto add = [&](int out, int pa, int pb, int sign) {
        for (int j = 0; j < n; ++j)
          g(out, j) += sign * (ga(pa, j) * bv[pb] + av[pa] * gb(pb, j));
      };
      if (!plan->equal_degrees) {
        for (const WedgeTerm& t : plan->terms) add(t.out, t.pos_a, t.pos_b, t.sign);
      } else {
        for (const WedgePairTerm& t : plan->pairs) {
          add(t.out, t.pos_s, t.pos_t, t.sign_st);
          add(t.out, t.pos_t, t.pos_s, t.sign_ts);
        }
      }
      return g;
    };
  }
  return KForm(
      a.chart(), ka + kb,
      [ca, cb, plan, n_out](std::span<const double> x) {
        return apply_wedge_plan(*plan, n_out, ca.coeffs_at(x), cb.coeffs_at(x));
      },
      std::move(grads));
}

// ---------------------------------------------------------------------------
// exterior derivative
// ---------------------------------------------------------------------------

namespace {

struct ExtDTerm {
  int out;
  int pos_in;
  int coord;
  int sign;
};

const std::vector<ExtDTerm>& ext_d_plan(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<ExtDTerm>> cache;
  std::lock_guard<std::mutex> lock(table_mutex);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<ExtDTerm> plan;
  const auto& outs = build_subsets(n, k + 1);
  const auto& ins = build_subsets(n, k);
  auto pos_in = [&ins](const std::vector<int>& idx) {
    for (std::size_t i = 0; i < ins.size(); ++i)
      if (ins[i] == idx) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t oi = 0; oi < outs.size(); ++oi) {
    const std::vector<int>& I = outs[oi];
    for (std::size_t m = 0; m < I.size(); ++m) {
      std::vector<int> rest;
      rest.reserve(I.size() - 1);
      for (std::size_t j = 0; j < I.size(); ++j)
        if (j != m) rest.push_back(I[j]);
      plan.push_back({static_cast<int>(oi), pos_in(rest), I[m], (m % 2 == 0) ? 1 : -1});
    }
  }
  it = cache.emplace(key, std::move(plan)).first;
  return it->second;
}

}  // namespace

KForm ext_d(const KForm& w) {
  const int n = w.chart()->dim();
  const int k = w.degree();
  if (k >= n) return KForm(w.chart(), k + 1, nullptr, nullptr);  // canonical zero form

  const auto* plan = &ext_d_plan(n, k);
  const int n_out = static_cast<int>(increasing_indices(n, k + 1).size());
  KForm cw = w;
  return KForm(w.chart(), k + 1, [cw, plan, n_out](std::span<const double> x) {
    const Matrix g = cw.coeff_grads_at(x);
    std::vector<double> out(static_cast<std::size_t>(n_out), 0.0);
    for (const ExtDTerm& t : *plan) {
      const double d = g(t.pos_in, t.coord);
      if (!std::isfinite(d)) throw NumericError("ext_d: non-finite derivative");
      out[static_cast<std::size_t>(t.out)] += t.sign * d;
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// interior product
// ---------------------------------------------------------------------------

namespace {

struct InteriorTerm {
  int out;
  int pos_in;
  int coord;
  int sign;
};

const std::vector<InteriorTerm>& interior_plan(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<InteriorTerm>> cache;
  std::lock_guard<std::mutex> lock(table_mutex);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<InteriorTerm> plan;
  const auto& outs = build_subsets(n, k - 1);
  const auto& ins = build_subsets(n, k);
  for (std::size_t ii = 0; ii < ins.size(); ++ii) {
    const std::vector<int>& I = ins[ii];
    for (std::size_t m = 0; m < I.size(); ++m) {
      std::vector<int> rest;
      rest.reserve(I.size() - 1);
      for (std::size_t j = 0; j < I.size(); ++j)
        if (j != m) rest.push_back(I[j]);
      int out = -1;
      for (std::size_t o = 0; o < outs.size(); ++o)
        if (outs[o] == rest) {
          out = static_cast<int>(o);
          break;
        }
      plan.push_back({out, static_cast<int>(ii), I[m], (m % 2 == 0) ? 1 : -1});
    }
  }
  it = cache.emplace(key, std::move(plan)).first;
  return it->second;
}

}  // namespace

KForm interior(const VectorFieldRepr& X, const KForm& w) {
  require_same_chart(X.chart, w.chart(), "interior");
  const int k = w.degree();
  if (k < 1) throw DegreeError("interior: needs degree >= 1");
  const int n = w.chart()->dim();
  if (w.trivially_zero()) return zero_form(w.chart(), k - 1);

  const auto* plan = &interior_plan(n, k);
  const int n_out = static_cast<int>(increasing_indices(n, k - 1).size());
  KForm cw = w;
  VectorFieldRepr cx = X;
  return KForm(w.chart(), k - 1, [cw, cx, plan, n_out](std::span<const double> x) {
    const std::vector<double> wv = cw.coeffs_at(x);
    const std::vector<double> xv = cx.components(x);
    std::vector<double> out(static_cast<std::size_t>(n_out), 0.0);
    for (const InteriorTerm& t : *plan)
      out[static_cast<std::size_t>(t.out)] +=
          t.sign * xv[static_cast<std::size_t>(t.coord)] * wv[static_cast<std::size_t>(t.pos_in)];
    return out;
  });
}

KForm lie_derivative(const VectorFieldRepr& X, const KForm& w) {
  require_same_chart(X.chart, w.chart(), "lie_derivative");
  if (w.degree() == 0) return interior(X, ext_d(w));
  KForm a = interior(X, ext_d(w));
  KForm b = ext_d(interior(X, w));
  if (a.trivially_zero()) return b;
  return a + b;
}

// ---------------------------------------------------------------------------
// pullback
// ---------------------------------------------------------------------------

KForm pullback(const SmoothMap& F, const KForm& w) {
  if (F.target.get() != w.chart().get())
    throw ChartMismatch("pullback: form does not live on the map's target chart");
  const int k = w.degree();
  const int ns = F.source->dim();
  if (k > ns) return KForm(F.source, k, nullptr, nullptr);  // zero form, degree > dim

  const int nt = F.target->dim();
  const auto* src_idx = &increasing_indices(ns, k);
  const auto* tgt_idx = &increasing_indices(nt, k);
  const int n_out = static_cast<int>(src_idx->size());
  KForm cw = w;
  SmoothMap cf = F;
  return KForm(F.source, k,
               [cw, cf, src_idx, tgt_idx, n_out, k](std::span<const double> x) {
                 const std::vector<double> q = cf.components(x);
                 const Matrix jac = cf.jacobian_at(x);
                 for (double v : jac.a)
                   if (!std::isfinite(v)) throw NumericError("pullback: non-finite Jacobian");
                 const std::vector<double> wv = cw.coeffs_at(q);
                 std::vector<double> out(static_cast<std::size_t>(n_out), 0.0);
                 if (k == 0) {
                   out[0] = wv[0];
                   return out;
                 }
                 Matrix sub(k, k);
                 for (int so = 0; so < n_out; ++so) {
                   const std::vector<int>& J = (*src_idx)[static_cast<std::size_t>(so)];
                   double acc = 0.0;
                   for (std::size_t ti = 0; ti < tgt_idx->size(); ++ti) {
                     const std::vector<int>& I = (*tgt_idx)[ti];
                     for (int r = 0; r < k; ++r)
                       for (int c = 0; c < k; ++c) sub(r, c) = jac(I[r], J[c]);
                     acc += wv[ti] * determinant(sub);
                   }
                   out[static_cast<std::size_t>(so)] = acc;
                 }
                 return out;
               });
}

double max_coeff_norm(const KForm& w, const std::vector<Point>& points) {
  double best = 0.0;
  for (const Point& p : points) {
    const std::vector<double> c = w.coeffs_at(p.x);
    for (double v : c) {
      if (!std::isfinite(v)) throw NumericError("max_coeff_norm: non-finite coefficient");
      best = std::max(best, std::fabs(v));
    }
  }
  return best;
}

}  // namespace volx
