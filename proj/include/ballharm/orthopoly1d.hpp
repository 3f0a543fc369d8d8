#pragma once

#include <stdexcept>
#include <vector>

#include "ballharm/polyalg.hpp"
#include "ballharm/rational.hpp"
#include "ballharm/real.hpp"

namespace ballharm {

namespace detail {

template <class T>
void require_jacobi_params(const T& alpha, const T& beta) {
  if (!(alpha > T(-1)) || !(beta > T(-1))) {
    throw std::invalid_argument("Jacobi parameters must exceed -1");
  }
}

}  // namespace detail

// P_0..P_nmax of the Jacobi family at t, by the three-term recurrence.
// No parameter check: contiguous relations need beta - 1 as well.
template <class T>
std::vector<T> jacobi_sequence_unchecked(int nmax, const T& alpha, const T& beta, const T& t) {
  std::vector<T> p;
  if (nmax < 0) return p;
  p.reserve(nmax + 1);
  p.emplace_back(1);
  if (nmax == 0) return p;
  T ab = alpha + beta;
  T p1 = (alpha + T(1)) + (ab + T(2)) * (t - T(1)) / T(2);
  p.push_back(p1);
  T a2 = alpha * alpha - beta * beta;
  for (int n = 2; n <= nmax; ++n) {
    T c = T(2 * n) + ab;  // 2n + a + b
    T a1 = T(2 * n) * (T(n) + ab) * (c - T(2));
    T a3 = (c - T(1)) * (c * (c - T(2)) * t + a2);
    T a4 = T(2) * (T(n) + alpha - T(1)) * (T(n) + beta - T(1)) * c;
    p.push_back((a3 * p[n - 1] - a4 * p[n - 2]) / a1);
  }
  return p;
}

template <class T>
std::vector<T> jacobi_sequence(int nmax, const T& alpha, const T& beta, const T& t) {
  detail::require_jacobi_params(alpha, beta);
  return jacobi_sequence_unchecked(nmax, alpha, beta, t);
}

template <class T>
T jacobi_eval(int n, const T& alpha, const T& beta, const T& t) {
  if (n < 0) throw std::invalid_argument("negative degree");
  return jacobi_sequence(n, alpha, beta, t).back();
}

// d/dt P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}.
template <class T>
T jacobi_deriv(int n, const T& alpha, const T& beta, const T& t) {
  detail::require_jacobi_params(alpha, beta);
  if (n < 0) throw std::invalid_argument("negative degree");
  if (n == 0) return T(0);
  T scale = (T(n) + alpha + beta + T(1)) / T(2);
  return scale * jacobi_sequence(n - 1, T(alpha + T(1)), T(beta + T(1)), t).back();
}

template <class T>
struct ContiguousPair {
  T lhs;  // beta P_n + (1 + t) P_n'
  T rhs;  // (beta + n) P_n^{(a+1, b-1)}
};

template <class T>
ContiguousPair<T> jacobi_contiguous(int n, const T& alpha, const T& beta, const T& t) {
  T pn = jacobi_eval(n, alpha, beta, t);
  T dp = jacobi_deriv(n, alpha, beta, t);
  T lhs = beta * pn + (T(1) + t) * dp;
  T shifted = jacobi_sequence_unchecked(n, T(alpha + T(1)), T(beta - T(1)), t).back();
  T rhs = (beta + T(n)) * shifted;
  return {lhs, rhs};
}

template <class T>
std::vector<T> gegenbauer_sequence(int nmax, const T& lambda, const T& u) {
  if (!(lambda > T(-1) / T(2))) throw std::invalid_argument("Gegenbauer lambda must exceed -1/2");
  std::vector<T> c;
  if (nmax < 0) return c;
  c.reserve(nmax + 1);
  c.emplace_back(1);
  if (nmax == 0) return c;
  c.push_back(T(2) * lambda * u);
  for (int n = 2; n <= nmax; ++n) {
    T a = T(2) * (T(n) + lambda - T(1)) * u * c[n - 1];
    T b = (T(n) + T(2) * lambda - T(2)) * c[n - 2];
    c.push_back((a - b) / T(n));
  }
  return c;
}

template <class T>
T gegenbauer_eval(int n, const T& lambda, const T& u) {
  if (n < 0) throw std::invalid_argument("negative degree");
  return gegenbauer_sequence(n, lambda, u).back();
}

template <class T>
T chebyshev_t(int n, const T& u) {
  if (n < 0) throw std::invalid_argument("negative degree");
  T prev(1), cur = u;
  if (n == 0) return prev;
  for (int k = 2; k <= n; ++k) {
    T next = T(2) * u * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

template <class T>
T chebyshev_u(int n, const T& u) {
  if (n < 0) throw std::invalid_argument("negative degree");
  T prev(1), cur = T(2) * u;
  if (n == 0) return prev;
  for (int k = 2; k <= n; ++k) {
    T next = T(2) * u * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Exact coefficient lists, ascending powers of the variable.
std::vector<Rational> jacobi_coefficients(int n, const Rational& alpha, const Rational& beta);
std::vector<Rational> gegenbauer_coefficients(int n, const Rational& lambda);
std::vector<Rational> chebyshev_t_coefficients(int n);
std::vector<Rational> chebyshev_u_coefficients(int n);

// Same families as univariate ExactPoly objects in x1.
ExactPoly jacobi_poly(int n, const Rational& alpha, const Rational& beta);
ExactPoly gegenbauer_poly(int n, const Rational& lambda);

template <class T>
struct GaussRule1D {
  std::vector<T> nodes;    // increasing
  std::vector<T> weights;  // sum to the weight's total mass
  T alpha;
  T beta;
  int exactness = 0;       // 2k - 1
};

// Golub-Welsch in double precision.
GaussRule1D<double> gauss_jacobi(int k, double alpha, double beta);

// Nodes polished by Newton iteration in working precision, starting from the
// double-precision rule. Throws std::runtime_error if Newton stalls.
GaussRule1D<Real> gauss_jacobi_refined(int k, const Real& alpha, const Real& beta);

// Total mass 2^{a+b+1} B(a+1, b+1) of (1-t)^a (1+t)^b on [-1, 1].
double jacobi_mass(double alpha, double beta);
Real jacobi_mass(const Real& alpha, const Real& beta);

}  // namespace ballharm
