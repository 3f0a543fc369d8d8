#include "ballharm/orthopoly1d.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace ballharm {

namespace {

using Coeffs = std::vector<Rational>;

Coeffs shifted(const Coeffs& p) {
  Coeffs out(p.size() + 1, Rational(0));
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k];
  return out;
}

void axpy(Coeffs& y, const Rational& a, const Coeffs& x) {
  if (y.size() < x.size()) y.resize(x.size(), Rational(0));
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

Coeffs scaled(const Coeffs& x, const Rational& a) {
  Coeffs out = x;
  for (auto& v : out) v *= a;
  return out;
}

}  // namespace

Coeffs jacobi_coefficients(int n, const Rational& alpha, const Rational& beta) {
  detail::require_jacobi_params(alpha, beta);
  if (n < 0) throw std::invalid_argument("negative degree");
  Coeffs prev{Rational(1)};
  if (n == 0) return prev;
  Rational ab = alpha + beta;
  Coeffs cur{Rational(alpha + 1 - (ab + 2) / 2), Rational((ab + 2) / 2)};
  Rational a2 = alpha * alpha - beta * beta;
  for (int m = 2; m <= n; ++m) {
    Rational c = ab + 2 * m;
    Rational a1 = 2 * m * (ab + m) * (c - 2);
    Rational lin = (c - 1) * c * (c - 2);
    Rational con = (c - 1) * a2;
    Rational a4 = 2 * (alpha + m - 1) * (beta + m - 1) * c;
    Coeffs next = scaled(shifted(cur), lin);
    axpy(next, con, cur);
    axpy(next, -a4, prev);
    for (auto& v : next) v /= a1;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Coeffs gegenbauer_coefficients(int n, const Rational& lambda) {
  if (lambda <= ratio(-1, 2)) throw std::invalid_argument("Gegenbauer lambda must exceed -1/2");
  if (n < 0) throw std::invalid_argument("negative degree");
  Coeffs prev{Rational(1)};
  if (n == 0) return prev;
  Coeffs cur{Rational(0), Rational(2 * lambda)};
  for (int m = 2; m <= n; ++m) {
    Coeffs next = scaled(shifted(cur), Rational(2 * (lambda + m - 1)));
    axpy(next, Rational(-(2 * lambda + m - 2)), prev);
    for (auto& v : next) v /= m;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

Coeffs chebyshev_coefficients(int n, const Coeffs& first) {
  if (n < 0) throw std::invalid_argument("negative degree");
  Coeffs prev{Rational(1)};
  if (n == 0) return prev;
  Coeffs cur = first;
  for (int m = 2; m <= n; ++m) {
    Coeffs next = scaled(shifted(cur), 2);
    axpy(next, -1, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Coeffs chebyshev_t_coefficients(int n) { return chebyshev_coefficients(n, {0, 1}); }
Coeffs chebyshev_u_coefficients(int n) { return chebyshev_coefficients(n, {0, 2}); }

ExactPoly jacobi_poly(int n, const Rational& alpha, const Rational& beta) {
  return univariate(1, 0, jacobi_coefficients(n, alpha, beta));
}

ExactPoly gegenbauer_poly(int n, const Rational& lambda) {
  return univariate(1, 0, gegenbauer_coefficients(n, lambda));
}

double jacobi_mass(double alpha, double beta) {
  detail::require_jacobi_params(alpha, beta);
  return std::exp((alpha + beta + 1) * std::log(2.0) + std::lgamma(alpha + 1) +
                  std::lgamma(beta + 1) - std::lgamma(alpha + beta + 2));
}

Real jacobi_mass(const Real& alpha, const Real& beta) {
  detail::require_jacobi_params(alpha, beta);
  return pow(Real(2), alpha + beta + 1) * tgamma(alpha + 1) * tgamma(beta + 1) /
         tgamma(alpha + beta + 2);
}

GaussRule1D<double> gauss_jacobi(int k, double alpha, double beta) {
  detail::require_jacobi_params(alpha, beta);
  if (k < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(k);
  Eigen::VectorXd sub(k > 1 ? k - 1 : 0);
  diag(0) = (beta - alpha) / (ab + 2);
  for (int n = 1; n < k; ++n) {
    const double c = 2.0 * n + ab;
    diag(n) = (beta * beta - alpha * alpha) / (c * (c + 2));
    double b2;
    if (n == 1) {
      b2 = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
    } else {
      b2 = 4.0 * n * (n + alpha) * (n + beta) * (n + ab) / (c * c * (c + 1) * (c - 1));
    }
    sub(n - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi: eigensolver did not converge");
  }
  const double mass = jacobi_mass(alpha, beta);
  GaussRule1D<double> rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.exactness = 2 * k - 1;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

GaussRule1D<Real> gauss_jacobi_refined(int k, const Real& alpha, const Real& beta) {
  detail::require_jacobi_params(alpha, beta);
  GaussRule1D<double> seed =
      gauss_jacobi(k, static_cast<double>(alpha), static_cast<double>(beta));
  const Real tol = pow(Real(10), -static_cast<int>(kRealDigits) + 5);
  GaussRule1D<Real> rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.exactness = 2 * k - 1;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  const Real a1 = alpha + 1;
  const Real b1 = beta + 1;
  const Real dscale = (Real(k) + alpha + beta + 1) / 2;
  for (int i = 0; i < k; ++i) {
    Real t = seed.nodes[i];
    Real dp;
    bool converged = false;
    for (int iter = 0; iter < 60; ++iter) {
      Real p = jacobi_sequence_unchecked(k, alpha, beta, t).back();
      dp = dscale * jacobi_sequence_unchecked(k - 1, a1, b1, t).back();
      Real step = p / dp;
      t -= step;
      if (abs(step) <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("gauss_jacobi_refined: Newton did not converge");
    dp = dscale * jacobi_sequence_unchecked(k - 1, a1, b1, t).back();
    rule.nodes[i] = t;
    rule.weights[i] = 1 / ((1 - t * t) * dp * dp);
  }
  Real sum = pairwise_sum(rule.weights);
  Real mass = jacobi_mass(alpha, beta);
  for (auto& w : rule.weights) w *= mass / sum;
  return rule;
}

}  // namespace ballharm
