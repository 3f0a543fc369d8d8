#include <random>

#include "ballharm/orthopoly1d.hpp"
#include "ballharm/spherical.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace ballharm;
using ballharm::testing::mono;
using ballharm::testing::random_homogeneous;

namespace {

// Binomial expansion of (x2 + i x1)^n, independent of the Chebyshev route.
std::pair<ExactPoly, ExactPoly> complex_power(int n) {
  ExactPoly re(2), im(2);
  Rational binom = 1;
  for (int k = 0; k <= n; ++k) {
    // term: C(n,k) x2^{n-k} (i x1)^k
    int e[2] = {k, n - k};
    Monomial m = Monomial::from_exponents(e);
    switch (k % 4) {
      case 0: re.add_term(m, binom); break;
      case 1: im.add_term(m, binom); break;
      case 2: re.add_term(m, -binom); break;
      case 3: im.add_term(m, -binom); break;
    }
    binom = binom * (n - k) / (k + 1);
  }
  return {re, im};
}

}  // namespace

TEST_CASE("worked basis elements") {
  ExactPoly y02(2), y11(2);
  y02.add_term(mono({0, 2}), 1);
  y02.add_term(mono({2, 0}), -1);
  y11.add_term(mono({1, 1}), 2);
  CHECK(harmonic_basis({0, 2}) == y02);
  CHECK(harmonic_basis({1, 1}) == y11);
  // F_2^{1/2} in three variables is (3 x3^2 - |x|^2) / 2.
  ExactPoly f(3);
  f.add_term(mono({0, 0, 2}), 1);
  f.add_term(mono({2, 0, 0}), ratio(-1, 2));
  f.add_term(mono({0, 2, 0}), ratio(-1, 2));
  CHECK(f_lambda(3, 2, ratio(1, 2)) == f);
}

TEST_CASE("dimension counts") {
  CHECK(harmonic_dimension(3, 2) == 2);
  CHECK(harmonic_dimension(0, 2) == 1);
  CHECK(harmonic_dimension(4, 3) == 9);
  CHECK(harmonic_dimension(3, 4) == 16);
  for (int d = 2; d <= 6; ++d) {
    for (int n = 0; n <= 8; ++n) {
      auto idx = enumerate_harmonic_indices(n, d);
      CHECK(static_cast<long>(idx.size()) == harmonic_dimension(n, d));
      for (const auto& i : idx) CHECK(i.degree() == n);
    }
  }
}

TEST_CASE("d = 2 basis equals real and imaginary parts of (x2 + i x1)^n") {
  for (int n = 1; n <= 10; ++n) {
    auto [re, im] = complex_power(n);
    CHECK(harmonic_basis({0, n}) == re);
    CHECK(harmonic_basis({1, n - 1}) == im);
  }
}

TEST_CASE("basis elements are harmonic, homogeneous and mutually orthogonal") {
  for (int d = 2; d <= 5; ++d) {
    for (int n = 0; n <= (d <= 3 ? 7 : 5); ++n) {
      auto idx = enumerate_harmonic_indices(n, d);
      std::vector<ExactPoly> ys;
      for (const auto& i : idx) {
        ExactPoly y = harmonic_basis(i);
        CHECK(y.degree() == n);
        CHECK(y.is_homogeneous());
        CHECK(laplacian(y).is_zero());
        ys.push_back(y);
      }
      MomentGram g(d, 0, false);
      auto G = g.gram(ys);
      for (std::size_t a = 0; a < ys.size(); ++a) {
        CHECK(G[a][a] == sphere_norm(idx[a]));
        CHECK(G[a][a] > 0);
        for (std::size_t b = a + 1; b < ys.size(); ++b) CHECK(G[a][b] == 0);
      }
    }
  }
}

TEST_CASE("sphere norm of the zonal element in three variables") {
  // Mean of P_n(u)^2 over [-1, 1] with the uniform weight is 1/(2n+1).
  for (int n = 0; n <= 10; ++n) CHECK(sphere_norm({0, 0, n}) == ratio(1, 2 * n + 1));
}

TEST_CASE("derivatives of F_n^lambda") {
  for (int d = 2; d <= 5; ++d) {
    for (Rational lambda : {ratio(1, 2), Rational(1), ratio(5, 2)}) {
      for (int n = 0; n <= 7; ++n) {
        ExactPoly f = f_lambda(d, n, lambda);
        for (int a = 0; a < d; ++a) {
          CHECK(partial_f_lambda(d, n, lambda, a).to_poly(d) == diff(f, a));
        }
      }
    }
  }
}

TEST_CASE("harmonic projection is the identity on harmonics and kills |x|^2 q") {
  std::mt19937_64 rng(9);
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 6; ++n) {
      for (const auto& i : enumerate_harmonic_indices(n, d)) {
        ExactPoly y = harmonic_basis(i);
        CHECK(project_to_harmonic(y) == y);
        if (n + 2 <= 8) CHECK(project_to_harmonic(norm_squared(d) * y).is_zero());
      }
      ExactPoly p = random_homogeneous(rng, d, n, 6);
      ExactPoly q = project_to_harmonic(p);
      CHECK(laplacian(q).is_zero());
      // p - proj(p) is orthogonal to every harmonic of degree n.
      for (const auto& i : enumerate_harmonic_indices(n, d)) {
        CHECK(sphere_inner_product(p - q, harmonic_basis(i)) == 0);
      }
    }
  }
  ExactPoly mixed = ExactPoly::variable(2, 0) + ExactPoly::constant(2, 1);
  CHECK_THROWS_AS(project_to_harmonic(mixed), std::invalid_argument);
}

TEST_CASE("derivative and raise expansions reproduce direct computation") {
  for (int d = 2; d <= 5; ++d) {
    int nmax = d <= 3 ? 8 : (d == 4 ? 6 : 5);
    for (int n = 0; n <= nmax; ++n) {
      for (const auto& idx : enumerate_harmonic_indices(n, d)) {
        ExactPoly y = harmonic_basis(idx);
        for (int a = 0; a < d; ++a) {
          auto de = derivative_expansion(idx, a);
          CHECK(assemble(de, d) == diff(y, a));
          CHECK(de.size() <= (std::size_t{1} << (d - 2)));
          for (const auto& t : de) CHECK(t.index.degree() == n - 1);
          auto re = raise_expansion(idx, a);
          CHECK(assemble(re, d) == project_to_harmonic(ExactPoly::variable(d, a) * y));
          CHECK(re.size() <= (std::size_t{1} << (d - 2)));
          for (const auto& t : re) CHECK(t.index.degree() == n + 1);
        }
      }
    }
  }
}

TEST_CASE("numeric norms agree with exact sphere norms") {
  for (int d = 2; d <= 4; ++d) {
    HarmonicNorms norms(d, 7);
    for (int n = 0; n <= 7; ++n) {
      for (const auto& idx : enumerate_harmonic_indices(n, d)) {
        Real exact = to_real(sphere_norm(idx));
        CHECK(abs(norms.squared_norm(idx) - exact) <= pow(Real(10), -95) * exact);
      }
    }
  }
}

TEST_CASE("numeric evaluation is the normalized exact basis") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(-0.6, 0.6);
  for (int d = 2; d <= 4; ++d) {
    HarmonicEvaluator ev(d, 6);
    std::vector<Real> x(d);
    std::vector<Rational> xr(d);
    for (int a = 0; a < d; ++a) {
      xr[a] = Rational(unif(rng));
      x[a] = to_real(xr[a]);
    }
    auto vals = ev.evaluate(x);
    const auto& cat = ev.catalog();
    REQUIRE(vals.size() == cat.size());
    for (std::size_t p = 0; p < cat.size(); ++p) {
      const auto& idx = cat.indices(d)[p];
      Real exact = to_real(harmonic_basis(idx).evaluate<Rational>(xr)) / sqrt(to_real(sphere_norm(idx)));
      CHECK(abs(vals[p] - exact) <= pow(Real(10), -90));
      CHECK(cat.position(idx) == static_cast<long>(p));
    }
  }
}

TEST_CASE("index validation") {
  CHECK_THROWS_AS(harmonic_basis({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(harmonic_basis({0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(harmonic_basis(HarmonicIndex({1})), std::invalid_argument);
  CHECK_THROWS_AS(derivative_expansion({0, 2}, 2), std::invalid_argument);
  CHECK(parse_harmonic_index("1-0-3") == HarmonicIndex({1, 0, 3}));
}
