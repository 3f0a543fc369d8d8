#include "ballharm/ballbasis.hpp"

#include <map>
#include <stdexcept>

#include "ballharm/orthopoly1d.hpp"

namespace ballharm {

void validate(const BallBasisIndex& idx) {
  validate(idx.nu);
  if (idx.j < 0 || idx.n < 0 || idx.nu.degree() != idx.n - 2 * idx.j) {
    throw std::invalid_argument("ball index requires |nu| = n - 2j with j >= 0");
  }
}

std::vector<BallBasisIndex> enumerate_ball_indices(int n, int d) {
  std::vector<BallBasisIndex> out;
  for (int j = 0; 2 * j <= n; ++j) {
    for (auto& nu : enumerate_harmonic_indices(n - 2 * j, d)) out.push_back({n, j, std::move(nu)});
  }
  return out;
}

Rational b_mu_ratio(const Rational& mu, int d) { return (mu + 1) / (mu + half(d) + 1); }

Real b_mu(const Real& mu, int d) {
  Real hd = Real(d) / 2;
  return tgamma(mu + hd + 1) / (pow(real_pi(), hd) * tgamma(mu + 1));
}

LaplacianImage laplacian_image(const Rational& mu, const BallBasisIndex& idx) {
  validate(idx);
  LaplacianImage out;
  if (idx.j == 0) {
    out.zero = true;
    out.factor = 0;
    return out;
  }
  out.factor = kappa(mu, idx.n - idx.j, idx.dim());
  out.target = {idx.n - 2, idx.j - 1, idx.nu};
  return out;
}

ExactPoly exact_ball_basis(const Rational& mu, const BallBasisIndex& idx) {
  validate(idx);
  const int d = idx.dim();
  Rational beta = Rational(idx.n - 2 * idx.j) + half(d - 2);
  auto q = jacobi_coefficients(idx.j, mu, beta);
  ExactPoly t = norm_squared(d) * Rational(2) - ExactPoly::constant(d, 1);
  return compose(q, t) * harmonic_basis(idx.nu);
}

std::vector<BallTerm> ball_derivative_expansion(const Rational& mu, const BallBasisIndex& idx, int axis) {
  validate(idx);
  const int d = idx.dim();
  if (axis < 0 || axis >= d) throw std::invalid_argument("axis out of range");
  const int m = idx.n;
  const int l = idx.j;
  const Rational beta = Rational(m - 2 * l) + half(d - 2);
  std::vector<BallTerm> out;
  // k = l: ((beta + l)/beta) P_l^{(mu+1, beta-1)} d_i Y.
  if (idx.nu.degree() >= 1) {
    if (beta == 0) throw std::logic_error("ball_derivative_expansion: beta vanished");
    Rational c = (beta + l) / beta;
    for (const auto& t : derivative_expansion(idx.nu, axis)) {
      out.push_back({c * t.coeff, {m - 1, l, t.index}});
    }
  }
  // k = l - 1: 2(l + mu + beta + 1) P_{l-1}^{(mu+1, beta+1)} proj(x_i Y).
  if (l >= 1) {
    Rational c = 2 * (l + mu + beta + 1);
    for (const auto& t : raise_expansion(idx.nu, axis)) {
      out.push_back({c * t.coeff, {m - 1, l - 1, t.index}});
    }
  }
  return out;
}

ExactPoly assemble(const Rational& mu, const std::vector<BallTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("assemble: empty expansion has no dimension");
  ExactPoly out(terms.front().index.dim());
  for (const auto& t : terms) out += exact_ball_basis(mu, t.index) * t.coeff;
  return out;
}

BallBasisEvaluator::BallBasisEvaluator(int dim, int max_degree, const Real& mu)
    : dim_(dim), max_degree_(max_degree), mu_(mu), harmonics_(dim, max_degree) {
  if (!(mu > -1)) throw std::invalid_argument("mu must exceed -1");
}

Real BallBasisEvaluator::evaluate(const BallBasisIndex& idx, std::span<const Real> x) const {
  validate(idx);
  if (idx.dim() != dim_ || idx.n > max_degree_) throw std::invalid_argument("index outside evaluator range");
  auto ys = harmonics_.evaluate(x);
  Real rho = 0;
  for (const auto& v : x) rho += v * v;
  Real beta = Real(idx.n - 2 * idx.j) + Real(dim_ - 2) / 2;
  Real p = jacobi_eval(idx.j, mu_, beta, Real(2 * rho - 1));
  return p * ys[catalog().position(idx.nu)];
}

std::vector<Real> BallBasisEvaluator::evaluate_all(std::span<const Real> x) const {
  auto ys = harmonics_.evaluate(x);
  Real rho = 0;
  for (const auto& v : x) rho += v * v;
  Real t = 2 * rho - 1;
  // Jacobi sequences per harmonic degree l.
  std::vector<std::vector<Real>> jac(max_degree_ + 1);
  for (int l = 0; l <= max_degree_; ++l) {
    jac[l] = jacobi_sequence((max_degree_ - l) / 2, mu_, Real(Real(l) + Real(dim_ - 2) / 2), t);
  }
  std::vector<Real> out;
  for (int n = 0; n <= max_degree_; ++n) {
    for (const auto& idx : enumerate_ball_indices(n, dim_)) {
      int l = n - 2 * idx.j;
      out.push_back(jac[l][idx.j] * ys[catalog().position(idx.nu)]);
    }
  }
  return out;
}

Real ball_basis_eval(const Real& mu, const BallBasisIndex& idx, std::span<const Real> x) {
  validate(idx);
  BallBasisEvaluator ev(idx.dim(), idx.n, mu);
  return ev.evaluate(idx, x);
}

}  // namespace ballharm
