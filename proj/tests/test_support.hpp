#pragma once

#include <random>

#include "ballharm/polyalg.hpp"

namespace ballharm::testing {

// Random polynomial with small rational coefficients and total degree <= degree.
inline ExactPoly random_poly(std::mt19937_64& rng, int dim, int degree, int terms) {
  std::uniform_int_distribution<int> deg(0, degree);
  std::uniform_int_distribution<int> axis(0, dim - 1);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  ExactPoly p(dim);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim, 0);
    int k = deg(rng);
    for (int i = 0; i < k; ++i) ++e[axis(rng)];
    p.add_term(Monomial::from_exponents(e), ratio(num(rng), den(rng)));
  }
  return p;
}

// Random homogeneous polynomial of the given degree.
inline ExactPoly random_homogeneous(std::mt19937_64& rng, int dim, int degree, int terms) {
  std::uniform_int_distribution<int> axis(0, dim - 1);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  ExactPoly p(dim);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim, 0);
    for (int i = 0; i < degree; ++i) ++e[axis(rng)];
    p.add_term(Monomial::from_exponents(e), ratio(num(rng), den(rng)));
  }
  return p;
}

inline Monomial mono(std::initializer_list<int> e) {
  std::vector<int> v(e);
  return Monomial::from_exponents(v);
}

}  // namespace ballharm::testing
