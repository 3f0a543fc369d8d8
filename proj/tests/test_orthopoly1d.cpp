#include <cmath>
#include <numbers>
#include <random>

#include "ballharm/orthopoly1d.hpp"
#include "doctest.h"

using namespace ballharm;

namespace {

// Generalized binomial C(a, k) for rational a.
Rational binom(const Rational& a, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= (a - i) / Rational(i + 1);
  return out;
}

ExactPoly t_poly(std::initializer_list<Rational> c) { return univariate(1, 0, std::vector<Rational>(c)); }

// Explicit finite sum for P_n^{(a,b)}.
ExactPoly jacobi_by_sum(int n, const Rational& a, const Rational& b) {
  ExactPoly out(1);
  ExactPoly tm = t_poly({ratio(-1, 2), ratio(1, 2)});
  ExactPoly tp = t_poly({ratio(1, 2), ratio(1, 2)});
  for (int s = 0; s <= n; ++s) {
    out += power(tm, s) * power(tp, n - s) * (binom(a + n, n - s) * binom(b + n, s));
  }
  return out;
}

// Explicit finite sum for C_n^lambda.
ExactPoly gegenbauer_by_sum(int n, const Rational& lambda) {
  ExactPoly out(1);
  for (int m = 0; 2 * m <= n; ++m) {
    Rational c = pochhammer(lambda, n - m) / (factorial(m) * factorial(n - 2 * m));
    for (int i = 0; i < n - 2 * m; ++i) c *= 2;
    if (m % 2) c = -c;
    std::vector<int> e{n - 2 * m};
    out.add_term(Monomial::from_exponents(e), c);
  }
  return out;
}

ExactPoly d1(const ExactPoly& p) { return diff(p, 0); }
ExactPoly t_times(const ExactPoly& p) { return ExactPoly::variable(1, 0) * p; }

// int t^m (1-t)^a (1+t)^b dt via t = (1+t) - 1 and Beta integrals, in working precision.
Real jacobi_moment(int m, const Real& a, const Real& b) {
  Real total = 0;
  Real binom = 1;
  for (int i = 0; i <= m; ++i) {
    Real term = binom * pow(Real(2), a + b + i + 1) * tgamma(a + 1) * tgamma(b + i + 1) / tgamma(a + b + i + 2);
    total += ((m - i) % 2 ? -term : term);
    binom = binom * (m - i) / (i + 1);
  }
  return total;
}

const std::vector<std::pair<Rational, Rational>> kParams = {
    {0, 0}, {ratio(1, 2), ratio(1, 2)}, {1, 0}, {ratio(1, 2), ratio(3, 2)},
    {ratio(-1, 2), 0}, {3, ratio(1, 2)}, {ratio(2, 3), ratio(-1, 3)}};

}  // namespace

TEST_CASE("worked values") {
  CHECK(jacobi_eval<double>(1, 0, 1, 0) == doctest::Approx(-0.5));
  CHECK(jacobi_deriv<double>(1, 0, 1, 0) == doctest::Approx(1.5));
  auto pair = jacobi_contiguous<Rational>(1, 0, 1, 0);
  CHECK(pair.lhs == 1);
  CHECK(pair.rhs == 1);
  auto rule = gauss_jacobi(1, 0, 0);
  REQUIRE(rule.nodes.size() == 1);
  CHECK(rule.nodes[0] == doctest::Approx(0).epsilon(1e-15));
  CHECK(rule.weights[0] == doctest::Approx(2));
}

TEST_CASE("Jacobi recurrence matches the explicit sum exactly") {
  for (auto [a, b] : kParams) {
    for (int n = 0; n <= 10; ++n) CHECK(jacobi_poly(n, a, b) == jacobi_by_sum(n, a, b));
  }
}

TEST_CASE("Gegenbauer recurrence matches the explicit sum exactly") {
  for (Rational lambda : {ratio(1, 2), Rational(1), ratio(3, 2), ratio(7, 3), ratio(-1, 4)}) {
    for (int n = 0; n <= 12; ++n) CHECK(gegenbauer_poly(n, lambda) == gegenbauer_by_sum(n, lambda));
  }
  // lambda = 0 gives the zero polynomial beyond degree 0.
  CHECK(gegenbauer_eval<Rational>(3, 0, ratio(1, 3)) == 0);
}

TEST_CASE("Chebyshev polynomials satisfy the trigonometric definitions") {
  for (int n = 0; n <= 15; ++n) {
    for (double th : {0.1, 0.7, 1.3, 2.9}) {
      CHECK(chebyshev_t(n, std::cos(th)) == doctest::Approx(std::cos(n * th)).epsilon(1e-12));
      CHECK(chebyshev_u(n, std::cos(th)) ==
            doctest::Approx(std::sin((n + 1) * th) / std::sin(th)).epsilon(1e-12));
    }
    CHECK(univariate(1, 0, chebyshev_u_coefficients(n)) == gegenbauer_poly(n, 1));
  }
}

TEST_CASE("Jacobi differential equation holds exactly") {
  for (auto [a, b] : kParams) {
    for (int n = 0; n <= 10; ++n) {
      ExactPoly p = jacobi_poly(n, a, b);
      ExactPoly one_minus_t2 = t_poly({1, 0, -1});
      ExactPoly lin = t_poly({b - a, -(a + b + 2)});
      ExactPoly lhs = one_minus_t2 * d1(d1(p)) + lin * d1(p) + p * Rational(n * (n + a + b + 1));
      CHECK(lhs.is_zero());
    }
  }
}

TEST_CASE("Jacobi derivative and contiguous relations hold exactly") {
  for (auto [a, b] : kParams) {
    for (int n = 1; n <= 10; ++n) {
      ExactPoly p = jacobi_poly(n, a, b);
      CHECK(d1(p) == jacobi_poly(n - 1, a + 1, b + 1) * ((n + a + b + 1) / Rational(2)));
      if (b > 0) {
        ExactPoly lhs = p * b + t_poly({1, 1}) * d1(p);
        CHECK(lhs == jacobi_poly(n, a + 1, b - 1) * (b + n));
      }
      for (Rational t : {Rational(0), ratio(1, 3), ratio(-5, 7)}) {
        auto pair = jacobi_contiguous<Rational>(n, a, b, t);
        CHECK(pair.lhs == pair.rhs);
      }
    }
  }
}

TEST_CASE("Gegenbauer identities used by the harmonic recursions") {
  for (Rational lambda : {ratio(1, 2), Rational(1), ratio(3, 2), ratio(5, 2), ratio(4, 3)}) {
    for (int n = 2; n <= 12; ++n) {
      ExactPoly c = gegenbauer_poly(n, lambda);
      ExactPoly c1 = gegenbauer_poly(n - 1, lambda + 1);
      ExactPoly c2 = gegenbauer_poly(n - 2, lambda + 1);
      // Derivative: C_n' = 2 lambda C_{n-1}^{lambda+1}.
      CHECK(d1(c) == c1 * (2 * lambda));
      // n C_n = 2 lambda [u C_{n-1}^{lambda+1} - C_{n-2}^{lambda+1}].
      CHECK(c * Rational(n) == (t_times(c1) - c2) * (2 * lambda));
      // n u C_n + 2 lambda (1 - u^2) C_{n-1}^{lambda+1} = (n + 2 lambda - 1) C_{n-1}.
      ExactPoly lhs = t_times(c) * Rational(n) + t_poly({1, 0, -1}) * c1 * (2 * lambda);
      CHECK(lhs == gegenbauer_poly(n - 1, lambda) * (n + 2 * lambda - 1));
      // (n + lambda) C_n = lambda [C_n^{lambda+1} - C_{n-2}^{lambda+1}].
      CHECK(c * (n + lambda) == (gegenbauer_poly(n, lambda + 1) - c2) * lambda);
    }
  }
}

TEST_CASE("floating evaluation matches exact evaluation") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-1, 1);
  for (auto [a, b] : kParams) {
    for (int n = 0; n <= 20; n += 3) {
      ExactPoly p = jacobi_poly(n, a, b);
      for (int i = 0; i < 5; ++i) {
        double t = unif(rng);
        std::vector<double> x{t};
        CHECK(jacobi_eval<double>(n, a.get_d(), b.get_d(), t) ==
              doctest::Approx(p.evaluate<double>(x)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Gauss-Jacobi rules integrate monomials to their exactness degree") {
  for (auto [ar, br] : kParams) {
    double a = ar.get_d(), b = br.get_d();
    for (int k = 1; k <= 10; ++k) {
      auto rule = gauss_jacobi(k, a, b);
      CHECK(rule.exactness == 2 * k - 1);
      for (int i = 1; i < k; ++i) CHECK(rule.nodes[i - 1] < rule.nodes[i]);
      for (int m = 0; m <= 2 * k - 1; ++m) {
        double q = 0;
        for (int i = 0; i < k; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], m);
        double exact = static_cast<double>(jacobi_moment(m, Real(a), Real(b)));
        double scale = static_cast<double>(jacobi_moment(0, Real(a), Real(b)));
        CHECK(std::abs(q - exact) <= 1e-13 * std::max(std::abs(exact), scale));
      }
    }
  }
  CHECK_THROWS_AS(gauss_jacobi(3, -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("refined rules are exact to working precision") {
  const Real tol = pow(Real(10), -95);
  for (auto [ar, br] : kParams) {
    Real a = to_real(ar), b = to_real(br);
    for (int k : {1, 4, 15, 40}) {
      auto rule = gauss_jacobi_refined(k, a, b);
      for (int m = 0; m <= 2 * k - 1; m += (k > 10 ? 7 : 1)) {
        Real q = 0;
        for (int i = 0; i < k; ++i) q += rule.weights[i] * pow(rule.nodes[i], m);
        Real exact = jacobi_moment(m, a, b);
        // The alternating Beta sum loses digits for large m; compare against its own scale.
        CHECK(abs(q - exact) <= tol * pow(Real(2), m) * jacobi_moment(0, a, b));
      }
    }
  }
}
