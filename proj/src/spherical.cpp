#include "ballharm/spherical.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ballharm/orthopoly1d.hpp"

namespace ballharm {

int HarmonicIndex::degree() const { return std::accumulate(n.begin(), n.end(), 0); }

HarmonicIndex HarmonicIndex::parent() const {
  if (n.size() < 2) throw std::invalid_argument("index has no parent");
  return HarmonicIndex(std::vector<int>(n.begin(), n.end() - 1));
}

HarmonicIndex HarmonicIndex::extended(int k) const {
  std::vector<int> v = n;
  v.push_back(k);
  return HarmonicIndex(std::move(v));
}

std::string HarmonicIndex::to_string(char sep) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) os << sep;
    os << n[i];
  }
  return os.str();
}

std::strong_ordering operator<=>(const HarmonicIndex& a, const HarmonicIndex& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.n <=> b.n;
}

void validate(const HarmonicIndex& idx) {
  if (idx.dim() < 2 || idx.dim() > kMaxDim) {
    throw std::invalid_argument("harmonic index dimension must be in 2.." + std::to_string(kMaxDim));
  }
  if (idx.n[0] != 0 && idx.n[0] != 1) throw std::invalid_argument("first index component must be 0 or 1");
  for (int v : idx.n) {
    if (v < 0) throw std::invalid_argument("negative index component");
  }
}

HarmonicIndex parse_harmonic_index(const std::string& text, char sep) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) v.push_back(std::stoi(item));
  HarmonicIndex idx(std::move(v));
  validate(idx);
  return idx;
}

Rational harmonic_lambda(const HarmonicIndex& idx) {
  validate(idx);
  if (idx.dim() < 3) throw std::invalid_argument("lambda is defined for d >= 3");
  return Rational(idx.degree() - idx.n.back()) + half(idx.dim() - 2);
}

namespace {

long binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

long harmonic_dimension(int n, int d) {
  if (n < 0 || d < 2) throw std::invalid_argument("harmonic_dimension: need n >= 0, d >= 2");
  return binomial(n + d - 1, n) - binomial(n + d - 3, n - 2);
}

std::vector<HarmonicIndex> enumerate_harmonic_indices(int n, int d) {
  if (n < 0 || d < 2 || d > kMaxDim) throw std::invalid_argument("enumerate: bad degree or dimension");
  std::vector<HarmonicIndex> out;
  if (d == 2) {
    out.push_back({0, n});
    if (n >= 1) out.push_back({1, n - 1});
    return out;
  }
  for (int k = 0; k <= n; ++k) {
    for (auto& p : enumerate_harmonic_indices(n - k, d - 1)) out.push_back(p.extended(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExactPoly f_lambda(int d, int n, const Rational& lambda) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("f_lambda: bad dimension");
  if (n < 0) return ExactPoly(d);
  std::vector<Rational> c = gegenbauer_coefficients(n, lambda);
  ExactPoly rho = norm_squared(d);
  ExactPoly out(d);
  Monomial xd = Monomial::unit(d - 1);
  Monomial xk;
  for (int k = 0; k <= n; ++k) {
    if ((n - k) % 2 == 0 && c[k] != 0) {
      out += ExactPoly::monomial(d, xk, c[k]) * power(rho, (n - k) / 2);
    }
    xk = xk * xd;
  }
  return out;
}

namespace {

std::mutex cache_mutex;
std::map<HarmonicIndex, ExactPoly>& basis_cache() {
  static std::map<HarmonicIndex, ExactPoly> cache;
  return cache;
}
std::map<HarmonicIndex, Rational>& norm_cache() {
  static std::map<HarmonicIndex, Rational> cache;
  return cache;
}

// sum_k c_k x2^k rho^{(n-k)/2} for a univariate list c in x2 / |x|.
ExactPoly homogenized_circle(const std::vector<Rational>& c, int n) {
  ExactPoly rho = norm_squared(2);
  ExactPoly out(2);
  for (int k = 0; k <= n; ++k) {
    if ((n - k) % 2 == 0 && c[k] != 0) {
      int e[2] = {0, k};
      out += ExactPoly::monomial(2, Monomial::from_exponents(e), c[k]) * power(rho, (n - k) / 2);
    }
  }
  return out;
}

ExactPoly build_basis(const HarmonicIndex& idx) {
  const int d = idx.dim();
  if (d == 2) {
    if (idx.n[0] == 0) return homogenized_circle(chebyshev_t_coefficients(idx.n[1]), idx.n[1]);
    ExactPoly u = homogenized_circle(chebyshev_u_coefficients(idx.n[1]), idx.n[1]);
    return ExactPoly::variable(2, 0) * u;
  }
  ExactPoly lower = harmonic_basis(idx.parent()).embed(d);
  return lower * f_lambda(d, idx.n.back(), harmonic_lambda(idx));
}

using TermMap = std::map<HarmonicIndex, Rational>;

void add_term(TermMap& acc, const HarmonicIndex& idx, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

HarmonicExpansion to_expansion(const TermMap& acc) {
  HarmonicExpansion out;
  out.reserve(acc.size());
  for (const auto& [idx, c] : acc) out.push_back({c, idx});
  return out;
}

void check_axis(const HarmonicIndex& idx, int axis) {
  if (axis < 0 || axis >= idx.dim()) throw std::invalid_argument("axis out of range");
}

}  // namespace

ExactPoly harmonic_basis(const HarmonicIndex& idx) {
  validate(idx);
  {
    std::lock_guard lock(cache_mutex);
    auto it = basis_cache().find(idx);
    if (it != basis_cache().end()) return it->second;
  }
  ExactPoly p = build_basis(idx);
  std::lock_guard lock(cache_mutex);
  basis_cache().try_emplace(idx, p);
  return p;
}

ExactPoly FLambdaDerivative::to_poly(int d) const {
  ExactPoly f = f_lambda(d, target_n, target_lambda);
  if (times_axis) f = ExactPoly::variable(d, axis) * f;
  return f * factor;
}

FLambdaDerivative partial_f_lambda(int d, int n, const Rational& lambda, int axis) {
  if (axis < 0 || axis >= d) throw std::invalid_argument("axis out of range");
  FLambdaDerivative out;
  out.axis = axis;
  if (axis < d - 1) {
    out.factor = -2 * lambda;
    out.times_axis = true;
    out.target_n = n - 2;
    out.target_lambda = lambda + 1;
  } else {
    out.factor = n + 2 * lambda - 1;
    out.target_n = n - 1;
    out.target_lambda = lambda;
  }
  if (out.target_n < 0) out.factor = 0;
  return out;
}

ExactPoly project_to_harmonic(const ExactPoly& p) {
  if (!p.is_homogeneous()) throw std::invalid_argument("project_to_harmonic: input is not homogeneous");
  if (p.is_zero()) return p;
  const int d = p.dim();
  const int n = p.degree();
  ExactPoly out = p;
  ExactPoly lap = p;
  ExactPoly rho_j = ExactPoly::constant(d, 1);
  ExactPoly rho = norm_squared(d);
  Rational coef = 1;
  const Rational base = Rational(2 - n) - half(d);
  for (int j = 1; 2 * j <= n; ++j) {
    lap = laplacian(lap);
    if (lap.is_zero()) break;
    rho_j = rho_j * rho;
    coef /= 4 * j * (base + j - 1);
    out += (rho_j * lap) * coef;
  }
  return out;
}

HarmonicExpansion derivative_expansion(const HarmonicIndex& idx, int axis) {
  validate(idx);
  check_axis(idx, axis);
  const int d = idx.dim();
  TermMap acc;
  if (d == 2) {
    const int m = idx.n[1];
    if (idx.n[0] == 0) {
      if (axis == 0 && m >= 2) add_term(acc, {1, m - 2}, -m);
      if (axis == 1 && m >= 1) add_term(acc, {0, m - 1}, m);
    } else {
      if (axis == 0) add_term(acc, {0, m}, m + 1);
      if (axis == 1 && m >= 1) add_term(acc, {1, m - 1}, m + 1);
    }
    return to_expansion(acc);
  }
  const HarmonicIndex lower = idx.parent();
  const int k = idx.n.back();
  const Rational lambda = harmonic_lambda(idx);
  if (axis == d - 1) {
    if (k >= 1) add_term(acc, lower.extended(k - 1), k + 2 * lambda - 1);
    return to_expansion(acc);
  }
  if (k >= 2) {
    for (const auto& t : raise_expansion(lower, axis)) {
      add_term(acc, t.index.extended(k - 2), -2 * lambda * t.coeff);
    }
  }
  if (lower.degree() >= 1) {
    Rational den = (2 * lambda - 1) * (2 * lambda - 2);
    if (den == 0) throw std::logic_error("derivative_expansion: degenerate lambda");
    Rational c = (k + 2 * lambda - 1) * (k + 2 * lambda - 2) / den;
    for (const auto& t : derivative_expansion(lower, axis)) {
      add_term(acc, t.index.extended(k), c * t.coeff);
    }
  }
  return to_expansion(acc);
}

HarmonicExpansion raise_expansion(const HarmonicIndex& idx, int axis) {
  validate(idx);
  check_axis(idx, axis);
  const int d = idx.dim();
  TermMap acc;
  if (d == 2) {
    const int n = idx.degree();
    if (n == 0) {
      if (axis == 0) add_term(acc, {1, 0}, 1);
      else add_term(acc, {0, 1}, 1);
      return to_expansion(acc);
    }
    const Rational h(1, 2);
    if (idx.n[0] == 0) {
      if (axis == 1) add_term(acc, {0, n + 1}, h);
      else add_term(acc, {1, n}, h);
    } else {
      if (axis == 1) add_term(acc, {1, n}, h);
      else add_term(acc, {0, n + 1}, -h);
    }
    return to_expansion(acc);
  }
  const HarmonicIndex lower = idx.parent();
  const int k = idx.n.back();
  const Rational lambda = harmonic_lambda(idx);
  if (axis == d - 1) {
    add_term(acc, lower.extended(k + 1), Rational(k + 1) / (2 * (k + lambda)));
    return to_expansion(acc);
  }
  Rational c1 = lambda / (k + lambda);
  for (const auto& t : raise_expansion(lower, axis)) {
    add_term(acc, t.index.extended(k), c1 * t.coeff);
  }
  if (lower.degree() >= 1) {
    Rational den = (2 * lambda - 1) * (2 * lambda - 2) * 2 * (k + lambda);
    if (den == 0) throw std::logic_error("raise_expansion: degenerate lambda");
    Rational c2 = -Rational((k + 1) * (k + 2)) / den;
    for (const auto& t : derivative_expansion(lower, axis)) {
      add_term(acc, t.index.extended(k + 2), c2 * t.coeff);
    }
  }
  return to_expansion(acc);
}

ExactPoly assemble(const HarmonicExpansion& expansion, int d) {
  ExactPoly out(d);
  for (const auto& t : expansion) {
    if (t.index.dim() != d) throw std::invalid_argument("assemble: dimension mismatch");
    out += harmonic_basis(t.index) * t.coeff;
  }
  return out;
}

Rational sphere_norm(const HarmonicIndex& idx) {
  validate(idx);
  {
    std::lock_guard lock(cache_mutex);
    auto it = norm_cache().find(idx);
    if (it != norm_cache().end()) return it->second;
  }
  ExactPoly y = harmonic_basis(idx);
  Rational v = sphere_inner_product(y, y);
  std::lock_guard lock(cache_mutex);
  norm_cache().try_emplace(idx, v);
  return v;
}

HarmonicCatalog::HarmonicCatalog(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("catalog: bad dimension");
  if (max_degree < 0) throw std::invalid_argument("catalog: negative degree");
  levels_.resize(dim + 1);
  auto& base = levels_[2];
  for (int n = 0; n <= max_degree; ++n) {
    base.indices.push_back({0, n});
    if (n >= 1) base.indices.push_back({1, n - 1});
  }
  for (const auto& idx : base.indices) base.degree.push_back(idx.degree());
  for (int m = 3; m <= dim; ++m) {
    auto& lev = levels_[m];
    const auto& prev = levels_[m - 1];
    struct Item {
      HarmonicIndex idx;
      int parent;
      int last;
    };
    std::vector<Item> items;
    for (std::size_t p = 0; p < prev.indices.size(); ++p) {
      for (int k = 0; prev.degree[p] + k <= max_degree; ++k) {
        items.push_back({prev.indices[p].extended(k), static_cast<int>(p), k});
      }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.idx < b.idx; });
    for (auto& it : items) {
      lev.degree.push_back(it.idx.degree());
      lev.parent.push_back(it.parent);
      lev.last.push_back(it.last);
      lev.indices.push_back(std::move(it.idx));
    }
  }
}

long HarmonicCatalog::position(const HarmonicIndex& idx) const {
  if (idx.dim() != dim_) return -1;
  const auto& v = levels_[dim_].indices;
  auto it = std::lower_bound(v.begin(), v.end(), idx);
  if (it == v.end() || !(*it == idx)) return -1;
  return it - v.begin();
}

HarmonicNorms::HarmonicNorms(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  const int N = max_degree;
  const int M = 2 * N + 1;
  const Real pi = real_pi();
  circle_cos_.assign(N + 1, Real(0));
  circle_sin_.assign(N + 1, Real(0));
  for (int k = 0; k <= N; ++k) {
    PairwiseSum c, s;
    for (int j = 0; j < M; ++j) {
      Real phi = 2 * pi * j * k / M;
      Real cv = cos(phi), sv = sin(phi);
      c.add(cv * cv);
      s.add(sv * sv);
    }
    circle_cos_[k] = c.total() / M;
    circle_sin_[k] = s.total() / M;
  }
  levels_.resize(dim + 1);
  for (int m = 3; m <= dim; ++m) {
    Real a = Real(m - 3) / 2;
    GaussRule1D<Real> rule = gauss_jacobi_refined(N + 1, a, a);
    Real mass = pairwise_sum(rule.weights);
    auto& lev = levels_[m];
    lev.assign(N + 1, {});
    for (int np = 0; np <= N; ++np) {
      Real lambda = Real(np) + Real(m - 2) / 2;
      std::vector<PairwiseSum> acc(N - np + 1);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real& u = rule.nodes[i];
        Real radial = pow(1 - u * u, np) * rule.weights[i];
        auto c = gegenbauer_sequence(N - np, lambda, u);
        for (int k = 0; k <= N - np; ++k) acc[k].add(radial * c[k] * c[k]);
      }
      lev[np].resize(N - np + 1);
      for (int k = 0; k <= N - np; ++k) lev[np][k] = acc[k].total() / mass;
    }
  }
}

Real HarmonicNorms::squared_norm(const HarmonicIndex& idx) const {
  validate(idx);
  if (idx.dim() != dim_ || idx.degree() > max_degree_) {
    throw std::invalid_argument("squared_norm: index outside table");
  }
  Real out = idx.n[0] == 0 ? circle_cos_[idx.n[1]] : circle_sin_[idx.n[1] + 1];
  int deg = idx.n[0] + idx.n[1];
  for (int m = 3; m <= dim_; ++m) {
    int k = idx.n[m - 1];
    out *= levels_[m][deg][k];
    deg += k;
  }
  return out;
}

HarmonicEvaluator::HarmonicEvaluator(int dim, int max_degree)
    : catalog_(dim, max_degree), norms_(dim, max_degree) {}

std::vector<Real> HarmonicEvaluator::evaluate(std::span<const Real> x) const {
  const int d = catalog_.dim();
  const int N = catalog_.max_degree();
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("evaluate: dimension mismatch");
  // Level 2: powers of x2 + i x1.
  std::vector<Real> re(N + 1), im(N + 1);
  re[0] = 1;
  im[0] = 0;
  for (int k = 1; k <= N; ++k) {
    re[k] = re[k - 1] * x[1] - im[k - 1] * x[0];
    im[k] = re[k - 1] * x[0] + im[k - 1] * x[1];
  }
  std::vector<Real> vals;
  for (const auto& idx : catalog_.indices(2)) {
    if (idx.n[0] == 0) vals.push_back(re[idx.n[1]] / sqrt(norms_.circle(idx.n[1], false)));
    else vals.push_back(im[idx.n[1] + 1] / sqrt(norms_.circle(idx.n[1] + 1, true)));
  }
  Real rho = x[0] * x[0] + x[1] * x[1];
  for (int m = 3; m <= d; ++m) {
    const Real& xm = x[m - 1];
    rho += xm * xm;
    // Homogeneous Gegenbauer recurrence: F_k = [2(k+l-1) x_m F_{k-1} - (k+2l-2) rho F_{k-2}] / k.
    std::vector<std::vector<Real>> F(N + 1);
    for (int np = 0; np <= N; ++np) {
      Real lambda = Real(np) + Real(m - 2) / 2;
      auto& f = F[np];
      f.resize(N - np + 1);
      f[0] = 1;
      if (N - np >= 1) f[1] = 2 * lambda * xm;
      for (int k = 2; k <= N - np; ++k) {
        f[k] = (2 * (k + lambda - 1) * xm * f[k - 1] - (k + 2 * lambda - 2) * rho * f[k - 2]) / k;
      }
    }
    std::vector<Real> next(catalog_.size(m));
    for (std::size_t pos = 0; pos < next.size(); ++pos) {
      int p = catalog_.parent(m, pos);
      int k = catalog_.last(m, pos);
      int np = catalog_.degree(m - 1, p);
      next[pos] = vals[p] * F[np][k] / sqrt(norms_.level(m, np, k));
    }
    vals = std::move(next);
  }
  return vals;
}

}  // namespace ballharm
