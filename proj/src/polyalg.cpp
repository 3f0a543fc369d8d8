#include "ballharm/polyalg.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "ballharm/real.hpp"

namespace ballharm {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("dimension must be in 1.." + std::to_string(kMaxDim));
  }
}

void check_axis(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("axis out of range");
}

// Gamma(k/2) for k >= 1, split into a rational part and a power of sqrt(pi).
struct HalfGamma {
  Rational value;
  int sqrt_pi = 0;
};

HalfGamma gamma_half(int twice) {
  assert(twice >= 1);
  if (twice % 2 == 0) return {factorial(twice / 2 - 1), 0};
  return {pochhammer(ratio(1, 2), (twice - 1) / 2), 1};
}

}  // namespace

Monomial Monomial::from_exponents(std::span<const int> exponents) {
  check_dim(static_cast<int>(exponents.size()));
  Monomial m;
  for (std::size_t a = 0; a < exponents.size(); ++a) {
    int e = exponents[a];
    if (e < 0) throw std::invalid_argument("negative exponent");
    m.degree_ += e;
    if (m.degree_ > kMaxDegree) throw std::invalid_argument("degree exceeds limit");
    m.bits_ |= static_cast<std::uint64_t>(e) << shift(static_cast<int>(a));
  }
  return m;
}

Monomial Monomial::unit(int axis) {
  check_axis(kMaxDim, axis);
  Monomial m;
  m.bits_ = std::uint64_t{1} << shift(axis);
  m.degree_ = 1;
  return m;
}

Monomial Monomial::operator*(Monomial other) const {
  if (degree_ + other.degree_ > kMaxDegree) {
    throw std::overflow_error("monomial degree exceeds limit");
  }
  Monomial m;
  m.bits_ = bits_ + other.bits_;
  m.degree_ = degree_ + other.degree_;
  return m;
}

Monomial Monomial::lowered(int axis) const {
  assert(exponent(axis) > 0);
  Monomial m;
  m.bits_ = bits_ - (std::uint64_t{1} << shift(axis));
  m.degree_ = degree_ - 1;
  return m;
}

ExactPoly::ExactPoly(int dim) : dim_(dim) { check_dim(dim); }

ExactPoly ExactPoly::constant(int dim, const Rational& c) {
  ExactPoly p(dim);
  p.add_term(Monomial(), c);
  return p;
}

ExactPoly ExactPoly::variable(int dim, int axis) {
  check_axis(dim, axis);
  return monomial(dim, Monomial::unit(axis));
}

ExactPoly ExactPoly::monomial(int dim, Monomial m, const Rational& c) {
  ExactPoly p(dim);
  for (int a = dim; a < kMaxDim; ++a) {
    if (m.exponent(a) != 0) throw std::invalid_argument("monomial exceeds dimension");
  }
  p.add_term(m, c);
  return p;
}

int ExactPoly::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

bool ExactPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Rational ExactPoly::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExactPoly::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

ExactPoly& ExactPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch");
  ExactPoly out(a.dim_);
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term(ma * mb, prod);
    }
  }
  return out;
}

bool operator==(const ExactPoly& a, const ExactPoly& b) {
  return a.dim_ == b.dim_ && a.terms_ == b.terms_;
}

ExactPoly ExactPoly::operator-() const {
  ExactPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

ExactPoly ExactPoly::embed(int new_dim) const {
  if (new_dim < dim_) throw std::invalid_argument("embed: cannot shrink dimension");
  check_dim(new_dim);
  ExactPoly out(new_dim);
  out.terms_ = terms_;
  return out;
}

template <>
double ExactPoly::evaluate<double>(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("dimension mismatch");
  double total = 0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (int a = 0; a < dim_; ++a) {
      for (int e = m.exponent(a); e > 0; --e) term *= x[a];
    }
    total += term;
  }
  return total;
}

template <>
Rational ExactPoly::evaluate<Rational>(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("dimension mismatch");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int a = 0; a < dim_; ++a) {
      for (int e = m.exponent(a); e > 0; --e) term *= x[a];
    }
    total += term;
  }
  return total;
}

template <>
Real ExactPoly::evaluate<Real>(std::span<const Real> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("dimension mismatch");
  Real total = 0;
  for (const auto& [m, c] : terms_) {
    Real term = to_real(c);
    for (int a = 0; a < dim_; ++a) {
      for (int e = m.exponent(a); e > 0; --e) term *= x[a];
    }
    total += term;
  }
  return total;
}

std::string ExactPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    bool unit = mag == 1 && m.degree() > 0;
    if (!unit) os << mag.get_str();
    bool need_star = !unit;
    for (int a = 0; a < dim_; ++a) {
      int e = m.exponent(a);
      if (e == 0) continue;
      if (need_star) os << "*";
      os << "x" << (a + 1);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

ExactPoly poly_arith(const ExactPoly& a, const ExactPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown op");
}

ExactPoly diff(const ExactPoly& p, int axis) {
  check_axis(p.dim(), axis);
  ExactPoly out(p.dim());
  for (const auto& [m, c] : p.terms()) {
    int e = m.exponent(axis);
    if (e == 0) continue;
    out.add_term(m.lowered(axis), c * e);
  }
  return out;
}

ExactPoly laplacian(const ExactPoly& p) {
  ExactPoly out(p.dim());
  for (int a = 0; a < p.dim(); ++a) out += diff(diff(p, a), a);
  return out;
}

ExactPoly angular_derivative(const ExactPoly& p, int i, int j) {
  check_axis(p.dim(), i);
  check_axis(p.dim(), j);
  if (i >= j) throw std::invalid_argument("angular_derivative requires i < j");
  ExactPoly out(p.dim());
  Monomial xi = Monomial::unit(i);
  Monomial xj = Monomial::unit(j);
  for (const auto& [m, c] : p.terms()) {
    if (int e = m.exponent(j); e > 0) out.add_term(m.lowered(j) * xi, c * e);
    if (int e = m.exponent(i); e > 0) out.add_term(m.lowered(i) * xj, -c * e);
  }
  return out;
}

ExactPoly laplace_beltrami(const ExactPoly& p) {
  ExactPoly out(p.dim());
  for (int i = 0; i < p.dim(); ++i) {
    for (int j = i + 1; j < p.dim(); ++j) {
      out += angular_derivative(angular_derivative(p, i, j), i, j);
    }
  }
  return out;
}

ExactPoly norm_squared(int dim) {
  ExactPoly out(dim);
  for (int a = 0; a < dim; ++a) out.add_term(Monomial::unit(a) * Monomial::unit(a), 1);
  return out;
}

ExactPoly power(const ExactPoly& p, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  ExactPoly out = ExactPoly::constant(p.dim(), 1);
  ExactPoly base = p;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

ExactPoly scale_variable(const ExactPoly& p, int axis, const Rational& c) {
  check_axis(p.dim(), axis);
  ExactPoly out(p.dim());
  for (const auto& [m, v] : p.terms()) {
    Rational f = v;
    for (int e = m.exponent(axis); e > 0; --e) f *= c;
    out.add_term(m, f);
  }
  return out;
}

ExactPoly univariate(int dim, int axis, const std::vector<Rational>& coeffs) {
  check_axis(dim, axis);
  ExactPoly out(dim);
  Monomial m;
  Monomial x = Monomial::unit(axis);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out.add_term(m, coeffs[k]);
    if (k + 1 < coeffs.size()) m = m * x;
  }
  return out;
}

ExactPoly compose(const std::vector<Rational>& q, const ExactPoly& g) {
  ExactPoly out(g.dim());
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    out = out * g;
    out.add_term(Monomial(), *it);
  }
  return out;
}

Rational sphere_monomial_moment(Monomial alpha, int dim) {
  check_dim(dim);
  for (int a = dim; a < kMaxDim; ++a) {
    if (alpha.exponent(a) != 0) throw std::invalid_argument("monomial exceeds dimension");
  }
  if (!alpha.all_even()) return 0;
  // mean = prod Gamma((a_i+1)/2) * Gamma(d/2) / (Gamma((|a|+d)/2) * pi^{d/2})
  Rational value = 1;
  int sqrt_pi = 0;
  for (int a = 0; a < dim; ++a) {
    HalfGamma g = gamma_half(alpha.exponent(a) + 1);
    value *= g.value;
    sqrt_pi += g.sqrt_pi;
  }
  HalfGamma gd = gamma_half(dim);
  value *= gd.value;
  sqrt_pi += gd.sqrt_pi;
  HalfGamma gt = gamma_half(alpha.degree() + dim);
  value /= gt.value;
  sqrt_pi -= gt.sqrt_pi;
  sqrt_pi -= dim;
  if (sqrt_pi != 0) throw std::logic_error("sphere moment: powers of pi did not cancel");
  return value;
}

Rational ball_monomial_moment(Monomial alpha, const Rational& mu, int dim) {
  if (mu <= -1) throw std::invalid_argument("mu must exceed -1");
  Rational s = sphere_monomial_moment(alpha, dim);
  if (s == 0) return 0;
  int k = alpha.degree() / 2;
  Rational radial = pochhammer(half(dim), k) / pochhammer(Rational(mu + half(dim) + 1), k);
  return s * radial;
}

namespace {

template <class MomentFn>
Rational paired_sum(const ExactPoly& p, const ExactPoly& q, MomentFn&& moment) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dimension mismatch");
  Rational total = 0;
  Rational prod;
  for (const auto& [ma, ca] : p.terms()) {
    for (const auto& [mb, cb] : q.terms()) {
      Monomial m = ma * mb;
      if (!m.all_even()) continue;
      prod = ca * cb;
      total += prod * moment(m);
    }
  }
  return total;
}

}  // namespace

Rational exact_inner_product(const ExactPoly& p, const ExactPoly& q, const Rational& mu) {
  MomentGram g(p.dim(), mu, true);
  return g.inner(p, q);
}

Rational sphere_inner_product(const ExactPoly& p, const ExactPoly& q) {
  MomentGram g(p.dim(), 0, false);
  return g.inner(p, q);
}

MomentGram::MomentGram(int dim, const Rational& mu, bool ball)
    : dim_(dim), mu_(mu), ball_(ball) {
  check_dim(dim);
  if (ball && mu <= -1) throw std::invalid_argument("mu must exceed -1");
}

Rational MomentGram::moment(Monomial alpha) {
  auto it = cache_.find(alpha.bits());
  if (it != cache_.end()) return it->second;
  Rational v = ball_ ? ball_monomial_moment(alpha, mu_, dim_)
                     : sphere_monomial_moment(alpha, dim_);
  cache_.emplace(alpha.bits(), v);
  return v;
}

Rational MomentGram::inner(const ExactPoly& p, const ExactPoly& q) {
  return paired_sum(p, q, [this](Monomial m) { return moment(m); });
}

std::vector<std::vector<Rational>> MomentGram::gram(const std::vector<ExactPoly>& polys) {
  std::vector<std::vector<ExactPoly>> components;
  components.reserve(polys.size());
  for (const auto& p : polys) components.push_back({p});
  return gram_sum(components);
}

std::vector<std::vector<Rational>> MomentGram::gram_sum(
    const std::vector<std::vector<ExactPoly>>& components) {
  const std::size_t n = components.size();
  std::size_t parts = n == 0 ? 0 : components[0].size();
  for (const auto& c : components) {
    if (c.size() != parts) throw std::invalid_argument("gram_sum: ragged components");
  }
  // For each component slot collect the monomials in use.
  std::vector<std::map<Monomial, std::size_t>> support(parts);
  for (const auto& c : components) {
    for (std::size_t k = 0; k < parts; ++k) {
      for (const auto& [m, v] : c[k].terms()) support[k].try_emplace(m, 0);
    }
  }
  std::vector<std::vector<Monomial>> monos(parts);
  for (std::size_t k = 0; k < parts; ++k) {
    std::size_t idx = 0;
    for (auto& [m, slot] : support[k]) {
      slot = idx++;
      monos[k].push_back(m);
    }
  }
  // functional[i][k][b] = sum_a p_a * moment(a + b) for p = components[i][k].
  std::vector<std::vector<std::vector<Rational>>> functional(n);
  Rational prod;
  for (std::size_t i = 0; i < n; ++i) {
    functional[i].resize(parts);
    for (std::size_t k = 0; k < parts; ++k) {
      auto& f = functional[i][k];
      f.assign(monos[k].size(), Rational(0));
      for (const auto& [ma, ca] : components[i][k].terms()) {
        for (std::size_t b = 0; b < monos[k].size(); ++b) {
          Monomial m = ma * monos[k][b];
          if (!m.all_even()) continue;
          prod = ca * moment(m);
          f[b] += prod;
        }
      }
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational total = 0;
      for (std::size_t k = 0; k < parts; ++k) {
        for (const auto& [m, c] : components[j][k].terms()) {
          prod = c * functional[i][k][support[k].at(m)];
          total += prod;
        }
      }
      out[i][j] = total;
      out[j][i] = total;
    }
  }
  return out;
}

}  // namespace ballharm
