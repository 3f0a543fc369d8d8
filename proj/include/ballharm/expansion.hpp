#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ballharm/ballbasis.hpp"
#include "ballharm/polyalg.hpp"
#include "ballharm/quadrature.hpp"
#include "ballharm/real.hpp"
#include "ballharm/spherical.hpp"

namespace ballharm {

struct CoefficientEntry {
  int n = 0;
  int j = 0;
  int nu = 0;  // position in catalog().indices(d)
  Real coeff;
  Real h;
};

// Coefficients of f against the orthonormal-harmonic basis P_{j,nu}^{n,mu},
// n <= N, stored in the order (n, j, nu).
class CoefficientTable {
 public:
  CoefficientTable(int dim, const Real& mu, int max_degree);

  int dim() const { return dim_; }
  const Real& mu() const { return mu_; }
  int max_degree() const { return max_degree_; }
  const HarmonicCatalog& catalog() const { return *catalog_; }
  const std::vector<CoefficientEntry>& entries() const { return entries_; }
  std::vector<CoefficientEntry>& entries() { return entries_; }

  int exact_degree = 0;  // of the rule that produced the table
  Real f_norm_sq = 0;    // quadrature norm of f, or the in-table energy if derived
  bool derived = false;  // produced by a coefficient map rather than by quadrature
  // Set by read_csv so a rewrite reproduces the file; write_csv computes it otherwise.
  std::optional<Real> recorded_parseval_gap;

  std::size_t offset(int n, int j) const { return offsets_[n][j]; }
  const CoefficientEntry& at(int n, int j, const HarmonicIndex& nu) const;
  // sum over j, nu of h |coeff|^2 at total degree n.
  Real degree_energy(int n) const;

 private:
  int dim_;
  Real mu_;
  int max_degree_;
  std::shared_ptr<const HarmonicCatalog> catalog_;
  std::vector<CoefficientEntry> entries_;
  std::vector<std::vector<std::size_t>> offsets_;
};

// Requires rule.mu() == mu and rule.exact_degree() >= 2N.
CoefficientTable expand(const RealFunction& f, const Real& mu, int N, const BallQuadrature& rule);
// Same, from values of f at the rule's nodes in node order.
CoefficientTable expand_values(std::span<const Real> values, int N, const BallQuadrature& rule);

Real partial_sum_eval(const CoefficientTable& table, int n, std::span<const Real> x);

struct ErrorEstimate {
  Real value;         // E_n(f), zero in the exact regime
  Real squared;       // tail energy above n plus the resolved residual of f_norm_sq
  Real tail_window;   // energy at degrees max(n + 1, N - 5) .. N
  bool exact = false;     // residual below the working-precision floor
  bool reliable = true;   // exact, or tail_window < 1% of E_n^2
};

ErrorEstimate best_error(const CoefficientTable& table, int n);

// Coefficients of Delta f in the basis with parameter mu + 2, degree N - 2:
// kappa_{n-j-1}^mu times the coefficient of f at (n, j + 1).
CoefficientTable coeff_laplacian_map(const CoefficientTable& table);
// Coefficients of the Laplace-Beltrami image: lambda_{n-2j} times f's.
CoefficientTable coeff_beltrami_map(const CoefficientTable& table);

// h_{j,m}^mu / h_{j-s,m-2s}^{mu+2s}.
template <class T>
T h_ratio(const T& mu, int s, int j, int m, int d) {
  if (s < 0 || j < s || 2 * j > m) throw std::invalid_argument("h_ratio: need s <= j <= m/2");
  return h_norm(mu, m, j, d) / h_norm(T(mu + T(2 * s)), m - 2 * s, j - s, d);
}

// Product form of the same ratio as it is commonly printed. It differs from
// the literal quotient by (m - j + mu + d/2)/(m - j + s + mu + d/2).
template <class T>
T h_ratio_printed(const T& mu, int s, int j, int m, int d) {
  T hd = T(d) / T(2);
  T num = pochhammer(T(mu + T(1)), 2 * s) * pochhammer(T(T(m - j - s) + hd), s) *
          pochhammer(T(mu + T(m - j) + T(d + 2) / T(2)), s);
  T den = pochhammer(T(mu + T(d + 2) / T(2)), 2 * s) * pochhammer(T(j - s + 1), s) *
          pochhammer(T(T(j) + mu + T(1)), s);
  return num / den;
}

// Exact L2(mu) projection of f onto polynomials of degree <= n.
ExactPoly exact_partial_sum(const ExactPoly& f, const Rational& mu, int n);
// d/dx_axis S_n^mu f - S_{n-1}^{mu+1}(d/dx_axis f); zero when the projections commute.
ExactPoly commuting_check(const ExactPoly& f, const Rational& mu, int n, int axis);
// D_{i,j} S_n^mu f - S_n^mu(D_{i,j} f).
ExactPoly commuting_check_angular(const ExactPoly& f, const Rational& mu, int n, int i, int j);

// CSV with '#'-prefixed header lines (d, mu, N, exact_degree, f_norm_sq,
// derived, parseval_gap) followed by rows n,j,nu,coeff,h. nu is dash-joined.
// parseval_gap is f_norm_sq minus the energy held in the table.
void write_csv(const CoefficientTable& table, std::ostream& out);
CoefficientTable read_csv(std::istream& in);

}  // namespace ballharm
