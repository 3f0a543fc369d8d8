#pragma once

#include <span>
#include <vector>

#include "ballharm/polyalg.hpp"
#include "ballharm/rational.hpp"
#include "ballharm/real.hpp"
#include "ballharm/spherical.hpp"

namespace ballharm {

// P_{j,nu}^{n,mu}(x) = P_j^{(mu, beta_j)}(2|x|^2 - 1) Y_nu(x) with |nu| = n - 2j
// and beta_j = n - 2j + (d - 2)/2. The weight parameter mu is passed separately.
struct BallBasisIndex {
  int n = 0;
  int j = 0;
  HarmonicIndex nu;

  int dim() const { return nu.dim(); }
  friend bool operator==(const BallBasisIndex&, const BallBasisIndex&) = default;
};

void validate(const BallBasisIndex& idx);

// All indices of total degree n in d variables, ordered by j then nu.
std::vector<BallBasisIndex> enumerate_ball_indices(int n, int d);

// Norm constants. T is double, Real or Rational.
template <class T>
T h_norm(const T& mu, int n, int j, int d) {
  if (j < 0 || 2 * j > n) throw std::invalid_argument("h_norm: need 0 <= 2j <= n");
  T hd = T(d) / T(2);
  T num = pochhammer(T(mu + T(1)), j) * pochhammer(hd, n - j) * (T(n - j) + mu + hd);
  T den = pochhammer(T(1), j) * pochhammer(T(mu + T(d + 2) / T(2)), n - j) * (T(n) + mu + hd);
  return num / den;
}

// Eigenvalue of the gradient form: 4j(n - j + mu + d/2) + 2(n - 2j)(mu + 1).
template <class T>
T gradient_factor(const T& mu, int n, int j, int d) {
  T hd = T(d) / T(2);
  return T(4 * j) * (T(n - j) + mu + hd) + T(2 * (n - 2 * j)) * (mu + T(1));
}

template <class T>
T h_grad(const T& mu, int n, int j, int d) {
  return gradient_factor(mu, n, j, d) * h_norm(mu, n, j, d);
}

template <class T>
T h_ang(const T& mu, int n, int j, int d) {
  int l = n - 2 * j;
  return T(l * (l + d - 2)) * h_norm(mu, n, j, d);
}

// Bundle returned by norm_triple.
template <class T>
struct NormTriple {
  T h;
  T h_grad;
  T h_ang;
};

template <class T>
NormTriple<T> norm_triple(const T& mu, int n, int j, int d) {
  return {h_norm(mu, n, j, d), h_grad(mu, n, j, d), h_ang(mu, n, j, d)};
}

// kappa_n^mu = 4(n + mu + d/2)(n + (d-2)/2).
template <class T>
T kappa(const T& mu, int n, int d) {
  return T(4) * (T(n) + mu + T(d) / T(2)) * (T(n) + T(d - 2) / T(2));
}

// Eigenvalue of the Laplace-Beltrami operator on degree-n harmonics.
inline long beltrami_eigenvalue(int n, int d) { return -static_cast<long>(n) * (n + d - 2); }

// b_mu / b_{mu+1} = (mu + 1)/(mu + d/2 + 1).
Rational b_mu_ratio(const Rational& mu, int d);
// b_mu = Gamma(mu + d/2 + 1) / (pi^{d/2} Gamma(mu + 1)).
Real b_mu(const Real& mu, int d);

// Laplacian of P_{j,nu}^{n,mu}: kappa_{n-j}^mu P_{j-1,nu}^{n-2,mu+2}, zero for j = 0.
struct LaplacianImage {
  Rational factor;
  bool zero = false;
  BallBasisIndex target;
};
LaplacianImage laplacian_image(const Rational& mu, const BallBasisIndex& idx);

// Exact element with the unnormalized harmonic Y_nu.
ExactPoly exact_ball_basis(const Rational& mu, const BallBasisIndex& idx);

struct BallTerm {
  Rational coeff;
  BallBasisIndex index;  // degree n - 1, weight parameter mu + 1
};

// d/dx_axis P_{l,eta}^{m,mu} in the basis of degree m - 1 with parameter
// mu + 1. Coefficients refer to unnormalized harmonics; the radial index of
// every term is l or l - 1.
std::vector<BallTerm> ball_derivative_expansion(const Rational& mu, const BallBasisIndex& idx, int axis);

ExactPoly assemble(const Rational& mu, const std::vector<BallTerm>& terms);

// Orthonormal-harmonic element P_{j,nu}^{n,mu} evaluated in working precision.
class BallBasisEvaluator {
 public:
  BallBasisEvaluator(int dim, int max_degree, const Real& mu);
  const HarmonicCatalog& catalog() const { return harmonics_.catalog(); }
  Real evaluate(const BallBasisIndex& idx, std::span<const Real> x) const;
  // Values of every element of degree <= max_degree at x, in the order of
  // enumerate_ball_indices for n = 0, 1, ...
  std::vector<Real> evaluate_all(std::span<const Real> x) const;

 private:
  int dim_;
  int max_degree_;
  Real mu_;
  HarmonicEvaluator harmonics_;
};

Real ball_basis_eval(const Real& mu, const BallBasisIndex& idx, std::span<const Real> x);

}  // namespace ballharm
