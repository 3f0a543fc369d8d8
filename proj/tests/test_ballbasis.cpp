#include <random>

#include "ballharm/ballbasis.hpp"
#include "ballharm/orthopoly1d.hpp"
#include "doctest.h"

using namespace ballharm;

namespace {

const std::vector<Rational> kMus = {0, 1, ratio(1, 2)};

std::vector<ExactPoly> gradient(const ExactPoly& p) {
  std::vector<ExactPoly> g;
  for (int a = 0; a < p.dim(); ++a) g.push_back(diff(p, a));
  return g;
}

std::vector<ExactPoly> angular(const ExactPoly& p) {
  std::vector<ExactPoly> g;
  for (int i = 0; i < p.dim(); ++i) {
    for (int j = i + 1; j < p.dim(); ++j) g.push_back(angular_derivative(p, i, j));
  }
  return g;
}

}  // namespace

TEST_CASE("worked norm values") {
  // h for 2|x|^2 - 1 in the disk: integral of (2r^2-1)^2 against r dr / pi * 2 pi.
  CHECK(h_norm<Rational>(0, 2, 1, 2) == ratio(1, 3));
  CHECK(h_norm<Rational>(0, 1, 0, 2) == ratio(1, 2));
  CHECK(h_grad<Rational>(0, 1, 0, 2) == 1);
  CHECK(h_ang<Rational>(0, 1, 0, 2) == ratio(1, 2));
  // grad(2|x|^2 - 1) = 4x, and (1/pi) int 16|x|^2 (1 - |x|^2) = 8/3.
  CHECK(h_grad<Rational>(0, 2, 1, 2) == ratio(8, 3));
  ExactPoly p = exact_ball_basis(0, {2, 1, {0, 0}});
  Rational direct = 0;
  for (const auto& g : gradient(p)) direct += exact_inner_product(g, g, 1);
  CHECK(direct * b_mu_ratio(0, 2) == ratio(8, 3));
  CHECK(h_norm<double>(0.5, 5, 2, 3) == doctest::Approx(h_norm<Rational>(ratio(1, 2), 5, 2, 3).get_d()));
}

TEST_CASE("worked evaluation and Laplacian") {
  std::vector<Real> x{Real("0.3"), Real("-0.4")};
  Real v = ball_basis_eval(Real(0), {1, 0, {0, 1}}, x);
  CHECK(abs(v - sqrt(Real(2)) * x[1]) < pow(Real(10), -100));
  CHECK(laplacian(exact_ball_basis(0, {2, 1, {0, 0}})) == ExactPoly::constant(2, 8));
  auto img = laplacian_image(0, {2, 1, {0, 0}});
  CHECK(img.factor == 8);
  CHECK(img.target == BallBasisIndex{0, 0, {0, 0}});
  CHECK(laplacian_image(0, {2, 0, {0, 2}}).zero);
}

TEST_CASE("normalization constant of the weight") {
  for (int d = 1; d <= 5; ++d) {
    for (Rational mu : kMus) {
      Real m = to_real(mu);
      // sigma_{d-1} * B(d/2, mu + 1) / 2 is the integral of the weight.
      Real hd = Real(d) / 2;
      Real area = 2 * pow(real_pi(), hd) / tgamma(hd);
      Real integral = area * tgamma(hd) * tgamma(m + 1) / tgamma(hd + m + 1) / 2;
      CHECK(abs(b_mu(m, d) * integral - 1) < pow(Real(10), -100));
      CHECK(abs(b_mu(m, d) / b_mu(m + 1, d) - to_real(b_mu_ratio(mu, d))) < pow(Real(10), -100));
    }
  }
}

TEST_CASE("Gram matrices in three inner products") {
  for (int d = 2; d <= 3; ++d) {
    for (Rational mu : kMus) {
      std::vector<BallBasisIndex> idx;
      for (int n = 0; n <= 4; ++n) {
        for (auto& i : enumerate_ball_indices(n, d)) idx.push_back(i);
      }
      std::vector<ExactPoly> polys;
      std::vector<std::vector<ExactPoly>> grads, angs;
      for (const auto& i : idx) {
        polys.push_back(exact_ball_basis(mu, i));
        grads.push_back(gradient(polys.back()));
        angs.push_back(angular(polys.back()));
      }
      MomentGram g0(d, mu), g1(d, mu + 1);
      auto L2 = g0.gram(polys);
      auto G = g1.gram_sum(grads);
      auto A = g0.gram_sum(angs);
      Rational ratio_b = b_mu_ratio(mu, d);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        Rational hy = sphere_norm(idx[a].nu);
        const auto& i = idx[a];
        CHECK(L2[a][a] == h_norm(mu, i.n, i.j, d) * hy);
        CHECK(G[a][a] * ratio_b == h_grad(mu, i.n, i.j, d) * hy);
        CHECK(A[a][a] == h_ang(mu, i.n, i.j, d) * hy);
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          CHECK(L2[a][b] == 0);
          CHECK(G[a][b] == 0);
          CHECK(A[a][b] == 0);
        }
      }
    }
  }
}

TEST_CASE("Laplacian and Laplace-Beltrami actions") {
  for (int d = 2; d <= 4; ++d) {
    for (Rational mu : kMus) {
      for (int n = 0; n <= 6; ++n) {
        for (const auto& i : enumerate_ball_indices(n, d)) {
          ExactPoly p = exact_ball_basis(mu, i);
          auto img = laplacian_image(mu, i);
          ExactPoly expected = img.zero ? ExactPoly(d) : exact_ball_basis(mu + 2, img.target) * img.factor;
          CHECK(laplacian(p) == expected);
          CHECK(laplace_beltrami(p) == p * Rational(beltrami_eigenvalue(n - 2 * i.j, d)));
        }
      }
    }
  }
}

TEST_CASE("derivative expansion reproduces the derivative with two radial indices") {
  for (int d = 2; d <= 4; ++d) {
    for (Rational mu : kMus) {
      for (int n = 1; n <= (d == 4 ? 5 : 6); ++n) {
        for (const auto& i : enumerate_ball_indices(n, d)) {
          ExactPoly p = exact_ball_basis(mu, i);
          for (int a = 0; a < d; ++a) {
            auto terms = ball_derivative_expansion(mu, i, a);
            ExactPoly got = terms.empty() ? ExactPoly(d) : assemble(mu + 1, terms);
            CHECK(got == diff(p, a));
            std::size_t same = 0, lower = 0;
            for (const auto& t : terms) {
              CHECK(t.index.n == n - 1);
              CHECK((t.index.j == i.j || t.index.j == i.j - 1));
              (t.index.j == i.j ? same : lower) += 1;
            }
            CHECK(same <= (std::size_t{1} << (d - 2)));
            CHECK(lower <= (std::size_t{1} << (d - 2)));
          }
        }
      }
    }
  }
}

TEST_CASE("numeric evaluation matches the normalized exact element") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int d = 2; d <= 3; ++d) {
    Rational mu = ratio(1, 2);
    BallBasisEvaluator ev(d, 5, to_real(mu));
    std::vector<Rational> xr(d);
    std::vector<Real> x(d);
    for (int a = 0; a < d; ++a) {
      xr[a] = Rational(unif(rng));
      x[a] = to_real(xr[a]);
    }
    auto all = ev.evaluate_all(x);
    std::size_t k = 0;
    for (int n = 0; n <= 5; ++n) {
      for (const auto& i : enumerate_ball_indices(n, d)) {
        Real exact = to_real(exact_ball_basis(mu, i).evaluate<Rational>(xr)) / sqrt(to_real(sphere_norm(i.nu)));
        CHECK(abs(ev.evaluate(i, x) - exact) < pow(Real(10), -90));
        CHECK(abs(all[k++] - exact) < pow(Real(10), -90));
      }
    }
  }
}

TEST_CASE("index validation") {
  CHECK_THROWS_AS(exact_ball_basis(0, {3, 1, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(h_norm<Rational>(0, 3, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(ball_derivative_expansion(0, {1, 0, {0, 1}}, 2), std::invalid_argument);
}
