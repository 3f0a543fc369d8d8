#include "ballharm/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ballharm {

SymbolicFunction::SymbolicFunction(ExactPoly exp_arg, ExactPoly base, Rational gamma, std::map<int, ExactPoly> terms)
    : exp_arg_(std::move(exp_arg)), base_(std::move(base)), gamma_(std::move(gamma)) {
  if (base_.dim() != exp_arg_.dim()) throw std::invalid_argument("symbolic function: dimension mismatch");
  if (base_.is_zero()) throw std::invalid_argument("symbolic function: zero base");
  for (auto& [b, p] : terms) {
    if (p.dim() != exp_arg_.dim()) throw std::invalid_argument("symbolic function: dimension mismatch");
    if (!p.is_zero()) terms_.emplace(b, std::move(p));
  }
}

SymbolicFunction SymbolicFunction::polynomial(const ExactPoly& p) {
  return SymbolicFunction(ExactPoly(p.dim()), ExactPoly::constant(p.dim(), 1), Rational(0), {{0, p}});
}

bool SymbolicFunction::same_family(const SymbolicFunction& other) const {
  return exp_arg_ == other.exp_arg_ && base_ == other.base_ && gamma_ == other.gamma_;
}

Real SymbolicFunction::evaluate(std::span<const Real> x) const {
  Real bx = base_.evaluate<Real>(x);
  Real sum = 0;
  for (const auto& [b, p] : terms_) {
    Real e = to_real(gamma_ - b);
    sum += p.evaluate<Real>(x) * (e == 0 ? Real(1) : Real(pow(bx, e)));
  }
  if (!exp_arg_.is_zero()) sum *= exp(exp_arg_.evaluate<Real>(x));
  return sum;
}

std::string SymbolicFunction::to_string() const {
  std::ostringstream os;
  os << "exp(" << exp_arg_.to_string() << ") * {";
  bool first = true;
  for (const auto& [b, p] : terms_) {
    if (!first) os << "; ";
    first = false;
    os << b << ": " << p.to_string();
  }
  os << "} * (" << base_.to_string() << ")^(" << ballharm::to_string(gamma_) << " - b)";
  return os.str();
}

namespace {

void accumulate(std::map<int, ExactPoly>& terms, int b, const ExactPoly& p) {
  if (p.is_zero()) return;
  auto it = terms.find(b);
  if (it == terms.end()) terms.emplace(b, p);
  else it->second += p;
}

SymbolicFunction with_terms(const SymbolicFunction& f, std::map<int, ExactPoly> terms) {
  return SymbolicFunction(f.exp_arg(), f.base(), f.gamma(), std::move(terms));
}

}  // namespace

SymbolicFunction diff(const SymbolicFunction& f, int axis) {
  const ExactPoly dl = diff(f.exp_arg(), axis);
  const ExactPoly db = diff(f.base(), axis);
  std::map<int, ExactPoly> out;
  for (const auto& [b, p] : f.terms()) {
    accumulate(out, b, diff(p, axis) + p * dl);
    Rational e = f.gamma() - b;
    if (e != 0 && !db.is_zero()) accumulate(out, b + 1, p * db * e);
  }
  return with_terms(f, std::move(out));
}

SymbolicFunction laplacian(const SymbolicFunction& f) {
  std::map<int, ExactPoly> out;
  for (int a = 0; a < f.dim(); ++a) {
    const SymbolicFunction g = diff(diff(f, a), a);
    for (const auto& [b, p] : g.terms()) accumulate(out, b, p);
  }
  return with_terms(f, std::move(out));
}

SymbolicFunction angular_derivative(const SymbolicFunction& f, int i, int j) {
  if (i < 0 || j >= f.dim() || i >= j) throw std::invalid_argument("angular_derivative: need 0 <= i < j < d");
  const ExactPoly xi = ExactPoly::variable(f.dim(), i);
  const ExactPoly xj = ExactPoly::variable(f.dim(), j);
  std::map<int, ExactPoly> out;
  const SymbolicFunction dj = diff(f, j);
  const SymbolicFunction di = diff(f, i);
  for (const auto& [b, p] : dj.terms()) accumulate(out, b, xi * p);
  for (const auto& [b, p] : di.terms()) accumulate(out, b, -(xj * p));
  return with_terms(f, std::move(out));
}

SymbolicFunction laplace_beltrami(const SymbolicFunction& f) {
  std::map<int, ExactPoly> out;
  for (int i = 0; i < f.dim(); ++i) {
    for (int j = i + 1; j < f.dim(); ++j) {
      const SymbolicFunction g = angular_derivative(angular_derivative(f, i, j), i, j);
      for (const auto& [b, p] : g.terms()) accumulate(out, b, p);
    }
  }
  return with_terms(f, std::move(out));
}

SymbolicFunction iterate_laplacian(const SymbolicFunction& f, int s) {
  SymbolicFunction g = f;
  for (int k = 0; k < s; ++k) g = laplacian(g);
  return g;
}

SymbolicFunction iterate_beltrami(const SymbolicFunction& f, int s) {
  SymbolicFunction g = f;
  for (int k = 0; k < s; ++k) g = laplace_beltrami(g);
  return g;
}

namespace {

// Polynomials flattened onto a shared monomial list.
struct CompiledPolys {
  int dim = 0;
  int max_exp = 0;
  std::vector<std::vector<int>> monos;
  std::vector<std::vector<std::pair<std::size_t, Real>>> polys;

  std::size_t add(const ExactPoly& p, std::map<Monomial, std::size_t>& index) {
    std::vector<std::pair<std::size_t, Real>> flat;
    for (const auto& [m, c] : p.terms()) {
      auto it = index.find(m);
      if (it == index.end()) {
        std::vector<int> e(dim);
        for (int a = 0; a < dim; ++a) {
          e[a] = m.exponent(a);
          max_exp = std::max(max_exp, e[a]);
        }
        it = index.emplace(m, monos.size()).first;
        monos.push_back(std::move(e));
      }
      flat.emplace_back(it->second, to_real(c));
    }
    polys.push_back(std::move(flat));
    return polys.size() - 1;
  }
};

}  // namespace

std::vector<std::vector<Real>> evaluate_on_rule(const std::vector<SymbolicFunction>& fs, const BallQuadrature& rule) {
  std::vector<std::vector<Real>> out(fs.size());
  if (fs.empty()) return out;
  const SymbolicFunction& head = fs.front();
  const int d = head.dim();
  if (d != rule.dim()) throw std::invalid_argument("evaluate_on_rule: dimension mismatch");
  for (const auto& f : fs) {
    if (!f.same_family(head)) throw std::invalid_argument("evaluate_on_rule: functions from different families");
  }
  CompiledPolys cp;
  cp.dim = d;
  std::map<Monomial, std::size_t> index;
  const std::size_t l_id = cp.add(head.exp_arg(), index);
  const std::size_t b_id = cp.add(head.base(), index);
  const bool has_exp = !head.exp_arg().is_zero();
  const bool const_base = head.base().degree() == 0;
  int bmin = std::numeric_limits<int>::max(), bmax = std::numeric_limits<int>::min();
  std::vector<std::vector<std::pair<int, std::size_t>>> plan(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    for (const auto& [b, p] : fs[k].terms()) {
      plan[k].emplace_back(b, cp.add(p, index));
      bmin = std::min(bmin, b);
      bmax = std::max(bmax, b);
    }
  }
  if (bmin > bmax) bmin = bmax = 0;
  const Real core_exp = to_real(head.gamma() - bmax);

  for (auto& v : out) v.reserve(rule.size());
  std::vector<std::vector<Real>> powers(d, std::vector<Real>(cp.max_exp + 1));
  std::vector<Real> mono(cp.monos.size());
  std::vector<Real> bpow(bmax - bmin + 1);
  rule.for_each_node([&](std::span<const Real> x, const Real&) {
    for (int a = 0; a < d; ++a) {
      powers[a][0] = 1;
      for (int e = 1; e <= cp.max_exp; ++e) powers[a][e] = powers[a][e - 1] * x[a];
    }
    for (std::size_t m = 0; m < cp.monos.size(); ++m) {
      Real v = 1;
      for (int a = 0; a < d; ++a) {
        if (cp.monos[m][a]) v *= powers[a][cp.monos[m][a]];
      }
      mono[m] = std::move(v);
    }
    auto eval = [&](std::size_t id) {
      Real acc = 0;
      for (const auto& [m, c] : cp.polys[id]) fma_accumulate(acc, c, mono[m]);
      return acc;
    };
    Real core = has_exp ? Real(exp(eval(l_id))) : Real(1);
    Real bx = eval(b_id);
    if (!const_base || head.base().terms().begin()->second != 1) {
      if (core_exp != 0) core *= pow(bx, core_exp);
    }
    bpow[0] = 1;
    for (std::size_t k = 1; k < bpow.size(); ++k) bpow[k] = bpow[k - 1] * bx;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      Real acc = 0;
      for (const auto& [b, id] : plan[k]) fma_accumulate(acc, eval(id), bpow[bmax - b]);
      out[k].push_back(acc * core);
    }
  });
  return out;
}

namespace {

ExactPoly rho_poly(int d) { return norm_squared(d); }

ExactPoly var(int d, int a) { return ExactPoly::variable(d, a); }

// Re and Im of (x1 + i x2)^k.
ExactPoly complex_power_re(int d, int k) {
  ExactPoly re = ExactPoly::constant(d, 1), im(d);
  for (int t = 0; t < k; ++t) {
    ExactPoly nre = re * var(d, 0) - im * var(d, 1);
    ExactPoly nim = re * var(d, 1) + im * var(d, 0);
    re = std::move(nre);
    im = std::move(nim);
  }
  return re;
}

constexpr int kFiniteSmoothNum = 5;  // gamma = 5/2

}  // namespace

std::vector<std::string> registry_names() {
  return {"radial_exp", "exp_sum", "harmonic_k6", "spherical_h2", "finite_smooth"};
}

TestFunction make_test_function(const std::string& name, int dim) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("test function: unsupported dimension");
  const ExactPoly one = ExactPoly::constant(dim, 1);
  const ExactPoly zero(dim);
  TestFunction tf{name, "", dim, SymbolicFunction::polynomial(zero)};
  if (name == "radial_exp") {
    tf.formula = "exp(|x|^2)";
    tf.f = SymbolicFunction(rho_poly(dim), one, Rational(0), {{0, one}});
    tf.shape = Shape::radial;
  } else if (name == "exp_sum") {
    ExactPoly sum(dim);
    for (int a = 0; a < dim; ++a) sum += var(dim, a);
    tf.formula = "exp(x1 + ... + xd)";
    tf.f = SymbolicFunction(sum, one, Rational(0), {{0, one}});
  } else if (name == "harmonic_k6") {
    tf.formula = "Re (x1 + i x2)^6";
    tf.f = SymbolicFunction::polynomial(complex_power_re(dim, 6));
    tf.shape = Shape::harmonic;
    tf.polynomial = true;
  } else if (name == "spherical_h2") {
    tf.formula = "(x1^2 - x2^2) / |x|^2";
    tf.f = SymbolicFunction(zero, rho_poly(dim), Rational(-1), {{0, complex_power_re(dim, 2)}});
    tf.smoothness = Smoothness::sobolev;
    tf.shape = Shape::spherical;
  } else if (name == "finite_smooth") {
    tf.formula = "(1 - |x|^2)^(5/2)";
    tf.f = SymbolicFunction(zero, one - rho_poly(dim), half(kFiniteSmoothNum), {{0, one}});
    tf.smoothness = Smoothness::sobolev;
    tf.shape = Shape::radial;
    tf.order_base = kFiniteSmoothNum + 1;
  } else {
    throw std::invalid_argument("unknown test function '" + name + "'");
  }
  return tf;
}

std::string TestFunction::unsupported(bool odd, int s, const Rational& mu) const {
  if (s < 0) return "s must be nonnegative";
  if (shape == Shape::spherical) {
    // Homogeneous of degree 0: Delta^s f ~ r^{-2s}, d/dx_i Delta^s f ~ r^{-2s-1}.
    int need = odd ? 4 * s + 2 : 4 * s;
    if (dim <= need) {
      return "the derivative images of " + name + " are not square integrable near the origin for d = " +
             std::to_string(dim) + " (need d > " + std::to_string(need) + ")";
    }
  }
  if (name == "finite_smooth") {
    // Delta^s f ~ (1 - |x|^2)^{gamma - 2s} against (1 - |x|^2)^{mu + 2s}, one
    // power lower and one weight higher for the odd images.
    Rational gamma = half(kFiniteSmoothNum);
    Rational lhs = 2 * gamma - 2 * s + mu + (odd ? 0 : 1);
    if (lhs <= 0) return "the images of " + name + " leave the weighted L2 space for this s and mu";
  }
  return "";
}

namespace {

Real fd_step(int order) { return pow(Real(10), order == 1 ? -30 : -25); }

Real fd_partial(const SymbolicFunction& g, std::vector<Real> x, int a) {
  Real h = fd_step(1);
  x[a] += h;
  Real plus = g.evaluate(x);
  x[a] -= 2 * h;
  Real minus = g.evaluate(x);
  return (plus - minus) / (2 * h);
}

Real fd_second(const SymbolicFunction& g, std::vector<Real> x, int a, int b) {
  Real h = fd_step(2);
  if (a == b) {
    Real mid = g.evaluate(x);
    x[a] += h;
    Real plus = g.evaluate(x);
    x[a] -= 2 * h;
    Real minus = g.evaluate(x);
    return (plus - 2 * mid + minus) / (h * h);
  }
  Real acc = 0;
  for (int sa : {1, -1}) {
    for (int sb : {1, -1}) {
      std::vector<Real> y = x;
      y[a] += sa * h;
      y[b] += sb * h;
      acc += sa * sb * g.evaluate(y);
    }
  }
  return acc / (4 * h * h);
}

Real fd_laplacian(const SymbolicFunction& g, const std::vector<Real>& x) {
  Real acc = 0;
  for (int a = 0; a < g.dim(); ++a) acc += fd_second(g, x, a, a);
  return acc;
}

Real fd_angular(const SymbolicFunction& g, const std::vector<Real>& x, int i, int j) {
  return x[i] * fd_partial(g, x, j) - x[j] * fd_partial(g, x, i);
}

// Sum over i < j of x_i^2 g_jj + x_j^2 g_ii - 2 x_i x_j g_ij - x_i g_i - x_j g_j.
Real fd_beltrami(const SymbolicFunction& g, const std::vector<Real>& x) {
  Real acc = 0;
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) {
      acc += x[i] * x[i] * fd_second(g, x, j, j) + x[j] * x[j] * fd_second(g, x, i, i) -
             2 * x[i] * x[j] * fd_second(g, x, i, j) - x[i] * fd_partial(g, x, i) - x[j] * fd_partial(g, x, j);
    }
  }
  return acc;
}

double rel_gap(const Real& a, const Real& b) {
  Real scale = std::max(Real(1), Real(abs(b)));
  return static_cast<double>(abs(a - b) / scale);
}

}  // namespace

double finite_difference_check(const TestFunction& tf, int s_max, int points, unsigned seed) {
  const int d = tf.dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(0.3, 0.8);
  double worst = 0;
  std::vector<SymbolicFunction> lap{tf.f}, bel{tf.f};
  for (int k = 1; k <= s_max; ++k) {
    lap.push_back(laplacian(lap.back()));
    bel.push_back(laplace_beltrami(bel.back()));
  }
  for (int p = 0; p < points; ++p) {
    std::vector<double> g(d);
    double norm = 0;
    for (auto& v : g) {
      v = gauss(rng);
      norm += v * v;
    }
    double r = radius(rng) / std::sqrt(norm);
    std::vector<Real> x(d);
    for (int a = 0; a < d; ++a) x[a] = Real(g[a] * r);
    for (int k = 0; k <= s_max; ++k) {
      if (k > 0) {
        worst = std::max(worst, rel_gap(fd_laplacian(lap[k - 1], x), lap[k].evaluate(x)));
        worst = std::max(worst, rel_gap(fd_beltrami(bel[k - 1], x), bel[k].evaluate(x)));
      }
      for (int a = 0; a < d; ++a) {
        worst = std::max(worst, rel_gap(fd_partial(lap[k], x, a), diff(lap[k], a).evaluate(x)));
      }
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
          worst = std::max(worst, rel_gap(fd_angular(bel[k], x, i, j), angular_derivative(bel[k], i, j).evaluate(x)));
        }
      }
    }
  }
  return worst;
}

void RateConfig::validate() const {
  if (n_min < 0) throw std::invalid_argument("n-min must be nonnegative");
  if (n_max < n_min) throw std::invalid_argument("n-max must be at least n-min");
  if (n_step < 1) throw std::invalid_argument("n-step must be positive");
  if (resolved_N() < n_max) throw std::invalid_argument("N must be at least n-max");
  if (resolved_degree() < 2 * resolved_N()) throw std::invalid_argument("quadrature degree must be at least 2N");
}

namespace {

std::vector<const RateRow*> inexact_rows(const RateReport& r) {
  std::vector<const RateRow*> out;
  for (const auto& row : r.rows) {
    if (!row.exact) out.push_back(&row);
  }
  return out;
}

}  // namespace

double RateReport::max_ratio() const {
  double m = 0;
  for (const auto* row : inexact_rows(*this)) m = std::max(m, row->ratio);
  return m;
}

double RateReport::median_ratio() const {
  std::vector<double> v;
  for (const auto* row : inexact_rows(*this)) v.push_back(row->ratio);
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : (v[k - 1] + v[k]) / 2;
}

bool RateReport::bounded() const {
  for (const auto* row : inexact_rows(*this)) {
    if (!std::isfinite(row->ratio)) return false;
  }
  return max_ratio() <= 3 * median_ratio();
}

bool RateReport::all_reliable() const {
  return std::all_of(rows.begin(), rows.end(), [](const RateRow& r) { return r.reliable; });
}

RateSession::RateSession(RateConfig config) : config_(config) { config_.validate(); }

std::vector<std::shared_ptr<const CoefficientTable>> RateSession::expand_images(
    const std::vector<SymbolicFunction>& images, const Rational& mu) {
  const int N = config_.resolved_N();
  const int D = config_.resolved_degree();
  const std::string mu_key = ballharm::to_string(mu);
  std::vector<std::string> keys(images.size());
  std::vector<std::size_t> pending;
  std::map<std::string, bool> queued;
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (images[k].is_zero()) continue;
    keys[k] = mu_key + "|" + images[k].to_string();
    if (!cache_.count(keys[k]) && !queued[keys[k]]) {
      queued[keys[k]] = true;
      pending.push_back(k);
    }
  }
  if (!pending.empty()) {
    BallQuadrature rule = build_ball_rule(images[pending.front()].dim(), to_real(mu), D);
    // Evaluate in small groups to bound the memory held in node values.
    constexpr std::size_t kGroup = 6;
    for (std::size_t start = 0; start < pending.size(); start += kGroup) {
      std::vector<SymbolicFunction> group;
      for (std::size_t k = start; k < std::min(pending.size(), start + kGroup); ++k) group.push_back(images[pending[k]]);
      auto values = evaluate_on_rule(group, rule);
      for (std::size_t k = 0; k < group.size(); ++k) {
        cache_[keys[pending[start + k]]] = std::make_shared<const CoefficientTable>(expand_values(values[k], N, rule));
        ++computed_;
      }
    }
  }
  std::vector<std::shared_ptr<const CoefficientTable>> out(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (!images[k].is_zero()) out[k] = cache_.at(keys[k]);
  }
  return out;
}

namespace {

struct ErrorValue {
  double value = 0;
  bool exact = true;
  bool reliable = true;
};

ErrorValue error_of(const std::shared_ptr<const CoefficientTable>& table, int n) {
  if (!table || n < 0) return {};
  if (n > table->max_degree()) throw std::invalid_argument("rates: degree beyond the expansion");
  auto e = best_error(*table, n);
  return {static_cast<double>(e.value), e.exact, e.reliable};
}

double norm_of(const std::shared_ptr<const CoefficientTable>& table) {
  return table ? static_cast<double>(sqrt(table->f_norm_sq)) : 0.0;
}

std::vector<int> degrees(const RateConfig& c) {
  std::vector<int> out;
  for (int n = c.n_min; n <= c.n_max; n += c.n_step) out.push_back(n);
  return out;
}

void finish_slopes(RateReport& report) {
  // Local slope: least squares over the row and its neighbours.
  auto fit = [](const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0.0;
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
  };
  auto usable = [](const RateRow& r) { return !r.exact && r.e_f > 0 && r.n > 0; };
  std::vector<std::pair<double, double>> all;
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t q = k == 0 ? 0 : k - 1; q <= std::min(report.rows.size() - 1, k + 1); ++q) {
      const auto& r = report.rows[q];
      if (usable(r)) pts.emplace_back(std::log(r.n), std::log(r.e_f));
    }
    report.rows[k].slope = fit(pts);
    if (usable(report.rows[k])) all.emplace_back(std::log(report.rows[k].n), std::log(report.rows[k].e_f));
  }
  report.fitted_slope = fit(all);

  // Slopes between consecutive rows in the upper half of the range, fitted
  // against 1/n; the intercept is the decay order with the O(1/n) drift removed.
  std::vector<std::pair<double, double>> drift;
  const double mid = (report.rows.front().n + report.rows.back().n) / 2.0;
  for (std::size_t k = 0; k + 1 < report.rows.size(); ++k) {
    const auto& a = report.rows[k];
    const auto& b = report.rows[k + 1];
    double centre = (a.n + b.n) / 2.0;
    if (!usable(a) || !usable(b) || centre < mid) continue;
    drift.emplace_back(1 / centre, std::log(b.e_f / a.e_f) / std::log(static_cast<double>(b.n) / a.n));
  }
  if (drift.size() >= 2) {
    double slope = fit(drift);
    double mx = 0, my = 0;
    for (auto [x, y] : drift) {
      mx += x;
      my += y;
    }
    mx /= drift.size();
    my /= drift.size();
    report.extrapolated_order = -(my - slope * mx);
  }
}

void check_supported(const TestFunction& tf, bool odd, int s, const Rational& mu) {
  if (mu <= -1) throw std::invalid_argument("mu must exceed -1");
  std::string why = tf.unsupported(odd, s, mu);
  if (!why.empty()) throw std::invalid_argument(why);
}

double safe_ratio(double num, double den, bool exact) {
  if (exact) return 0;
  if (den <= 0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

RateReport RateSession::measure_even(const TestFunction& tf, const Rational& mu, int s) {
  check_supported(tf, false, s, mu);
  if (s < 1) throw std::invalid_argument("measure_even needs s >= 1");
  RateReport report;
  report.function = tf.name;
  report.dim = tf.dim;
  report.mu = mu;
  report.s = s;
  report.N = config_.resolved_N();
  report.quad_degree = config_.resolved_degree();
  const std::string sp = std::to_string(s);
  report.term_labels = {"lap^" + sp, "bel^" + sp};

  auto lap = iterate_laplacian(tf.f, s);
  auto bel = iterate_beltrami(tf.f, s);
  auto at_mu = expand_images({tf.f, bel}, mu);
  auto at_shift = expand_images({lap}, mu + 2 * s);
  report.image_norm = norm_of(at_shift[0]) + norm_of(at_mu[1]);

  for (int n : degrees(config_)) {
    RateRow row;
    row.n = n;
    auto ef = error_of(at_mu[0], n);
    auto el = error_of(at_shift[0], n - 2 * s);
    auto eb = error_of(at_mu[1], n);
    row.e_f = ef.value;
    row.e_lap = el.value;
    row.e_bel = eb.value;
    row.exact = ef.exact;
    row.reliable = ef.reliable && el.reliable && eb.reliable;
    double scale = std::pow(static_cast<double>(n), 2 * s);
    row.ratio = safe_ratio(scale * row.e_f, row.e_lap + row.e_bel, row.exact);
    row.corollary = safe_ratio(scale * row.e_f, report.image_norm, row.exact);
    row.terms = {row.e_lap, row.e_bel};
    report.rows.push_back(std::move(row));
  }
  finish_slopes(report);
  return report;
}

RateReport RateSession::measure_odd(const TestFunction& tf, const Rational& mu, int s) {
  check_supported(tf, true, s, mu);
  const int d = tf.dim;
  RateReport report;
  report.function = tf.name;
  report.dim = d;
  report.mu = mu;
  report.s = s;
  report.odd = true;
  report.N = config_.resolved_N();
  report.quad_degree = config_.resolved_degree();
  const std::string sp = std::to_string(s);

  auto lap = iterate_laplacian(tf.f, s);
  auto bel = iterate_beltrami(tf.f, s);
  std::vector<SymbolicFunction> first, second;
  for (int i = 0; i < d; ++i) {
    first.push_back(diff(lap, i));
    report.term_labels.push_back("dx" + std::to_string(i + 1) + "_lap^" + sp);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      second.push_back(angular_derivative(bel, i, j));
      report.term_labels.push_back("D" + std::to_string(i + 1) + std::to_string(j + 1) + "_bel^" + sp);
    }
  }
  std::vector<SymbolicFunction> at_mu_images{tf.f};
  at_mu_images.insert(at_mu_images.end(), second.begin(), second.end());
  auto at_mu = expand_images(at_mu_images, mu);
  auto at_shift = expand_images(first, mu + 2 * s + 1);

  for (int n : degrees(config_)) {
    RateRow row;
    row.n = n;
    auto ef = error_of(at_mu[0], n);
    row.e_f = ef.value;
    row.exact = ef.exact;
    row.reliable = ef.reliable;
    for (const auto& t : at_shift) {
      auto e = error_of(t, n - 2 * s - 1);
      row.e_lap += e.value;
      row.reliable = row.reliable && e.reliable;
      row.terms.push_back(e.value);
    }
    for (std::size_t k = 1; k < at_mu.size(); ++k) {
      auto e = error_of(at_mu[k], n);
      row.e_bel += e.value;
      row.reliable = row.reliable && e.reliable;
      row.terms.push_back(e.value);
    }
    double scale = std::pow(static_cast<double>(n), 2 * s + 1);
    row.ratio = safe_ratio(scale * row.e_f, row.e_lap + row.e_bel, row.exact);
    report.rows.push_back(std::move(row));
  }
  finish_slopes(report);
  return report;
}

RateReport measure_even(const TestFunction& tf, const Rational& mu, int s, const RateConfig& config) {
  RateSession session(config);
  return session.measure_even(tf, mu, s);
}

RateReport measure_odd(const TestFunction& tf, const Rational& mu, int s, const RateConfig& config) {
  RateSession session(config);
  return session.measure_odd(tf, mu, s);
}

void write_rate_csv(const RateReport& r, std::ostream& out) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return std::string(buf);
  };
  out << "# function=" << r.function << "\n";
  out << "# d=" << r.dim << "\n";
  out << "# mu=" << ballharm::to_string(r.mu) << "\n";
  out << "# s=" << r.s << "\n";
  out << "# mode=" << (r.odd ? "odd" : "even") << "\n";
  out << "# N=" << r.N << "\n";
  out << "# quad_degree=" << r.quad_degree << "\n";
  out << "# fitted_slope=" << num(r.fitted_slope) << "\n";
  out << "# extrapolated_order=" << num(r.extrapolated_order) << "\n";
  out << "# max_ratio=" << num(r.max_ratio()) << "\n";
  out << "# median_ratio=" << num(r.median_ratio()) << "\n";
  out << "# bounded=" << (r.bounded() ? 1 : 0) << "\n";
  out << "n,E_f,E_lap,E_bel,ratio,slope,corollary,exact,reliable";
  for (const auto& label : r.term_labels) out << ',' << label;
  out << "\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << num(row.e_f) << ',' << num(row.e_lap) << ',' << num(row.e_bel) << ',' << num(row.ratio)
        << ',' << num(row.slope) << ',' << (r.odd ? std::string("") : num(row.corollary)) << ','
        << (row.exact ? 1 : 0) << ',' << (row.reliable ? 1 : 0);
    for (double t : row.terms) out << ',' << num(t);
    out << "\n";
  }
}

}  // namespace ballharm
