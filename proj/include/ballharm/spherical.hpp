#pragma once

#include <compare>
#include <string>
#include <vector>

#include "ballharm/polyalg.hpp"
#include "ballharm/rational.hpp"
#include "ballharm/real.hpp"

namespace ballharm {

// Multi-index (n_1, ..., n_d) of the orthogonal basis of spherical harmonics,
// with n_1 in {0, 1}. The basis element is built recursively: in d = 2,
// (0, n) is Re(x2 + i x1)^n and (1, m) is Im(x2 + i x1)^{m+1}; in higher
// dimension the index (n', k) multiplies the lower element by F_k^lambda with
// lambda = |n'| + (d - 2)/2.
struct HarmonicIndex {
  std::vector<int> n;

  HarmonicIndex() = default;
  HarmonicIndex(std::initializer_list<int> values) : n(values) {}
  explicit HarmonicIndex(std::vector<int> values) : n(std::move(values)) {}

  int dim() const { return static_cast<int>(n.size()); }
  int degree() const;
  // Index with the last component removed.
  HarmonicIndex parent() const;
  HarmonicIndex extended(int k) const;
  std::string to_string(char sep = '-') const;

  // Degree first, then lexicographic.
  friend std::strong_ordering operator<=>(const HarmonicIndex& a, const HarmonicIndex& b);
  friend bool operator==(const HarmonicIndex& a, const HarmonicIndex& b) = default;
};

void validate(const HarmonicIndex& idx);
HarmonicIndex parse_harmonic_index(const std::string& text, char sep = '-');

struct HarmonicTerm {
  Rational coeff;
  HarmonicIndex index;
};
using HarmonicExpansion = std::vector<HarmonicTerm>;

// lambda attached to the last component of an index: |n'| + (d - 2)/2.
Rational harmonic_lambda(const HarmonicIndex& idx);

// Dimension of the space of degree-n spherical harmonics in d variables.
long harmonic_dimension(int n, int d);
std::vector<HarmonicIndex> enumerate_harmonic_indices(int n, int d);

// F_n^lambda(x) = |x|^n C_n^lambda(x_d / |x|) as a polynomial in d variables.
ExactPoly f_lambda(int d, int n, const Rational& lambda);

// Unnormalized basis element. Memoized; safe to call from several threads.
ExactPoly harmonic_basis(const HarmonicIndex& idx);

// Derivative of F_n^lambda along `axis`, as factor * [x_axis] * F_m^nu.
struct FLambdaDerivative {
  Rational factor;
  bool times_axis = false;
  int axis = 0;
  int target_n = 0;
  Rational target_lambda;
  ExactPoly to_poly(int d) const;
};
FLambdaDerivative partial_f_lambda(int d, int n, const Rational& lambda, int axis);

// Orthogonal projection of a homogeneous polynomial onto harmonics of its degree.
ExactPoly project_to_harmonic(const ExactPoly& p);

// d/dx_axis Y_idx in the basis of degree |idx| - 1.
HarmonicExpansion derivative_expansion(const HarmonicIndex& idx, int axis);
// proj(x_axis Y_idx) in the basis of degree |idx| + 1.
HarmonicExpansion raise_expansion(const HarmonicIndex& idx, int axis);

ExactPoly assemble(const HarmonicExpansion& expansion, int d);

// Mean of Y_idx^2 over the unit sphere, exact.
Rational sphere_norm(const HarmonicIndex& idx);

// Enumeration of all indices of degree <= max_degree for each dimension
// 2..dim, with the parent/child links the recursive transforms need.
class HarmonicCatalog {
 public:
  HarmonicCatalog(int dim, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  // Indices of dimension m, sorted by degree then lexicographically.
  const std::vector<HarmonicIndex>& indices(int m) const { return levels_[m].indices; }
  std::size_t size(int m) const { return levels_[m].indices.size(); }
  std::size_t size() const { return size(dim_); }
  // For m >= 3: position of the parent in level m - 1 and the last component.
  int parent(int m, std::size_t pos) const { return levels_[m].parent[pos]; }
  int last(int m, std::size_t pos) const { return levels_[m].last[pos]; }
  int degree(int m, std::size_t pos) const { return levels_[m].degree[pos]; }
  // Position of an index of dimension dim(); -1 when absent.
  long position(const HarmonicIndex& idx) const;

 private:
  struct Level {
    std::vector<HarmonicIndex> indices;
    std::vector<int> parent;
    std::vector<int> last;
    std::vector<int> degree;
  };
  int dim_;
  int max_degree_;
  std::vector<Level> levels_;
};

// Squared sphere norms of the unnormalized basis split into per-level factors,
// each computed by a Gauss rule that is exact for its integrand:
//   level 2:  mean of cos^2(k phi) or sin^2(k phi)
//   level m:  normalized integral of (1 - u^2)^{n'} C_k^lambda(u)^2
//             against (1 - u^2)^{(m-3)/2}
class HarmonicNorms {
 public:
  HarmonicNorms(int dim, int max_degree);
  // Mean of cos^2(k phi) (sine == false) or sin^2(k phi).
  const Real& circle(int k, bool sine) const { return sine ? circle_sin_[k] : circle_cos_[k]; }
  // n' = degree of the parent, k = last component.
  const Real& level(int m, int nprime, int k) const { return levels_[m][nprime][k]; }
  Real squared_norm(const HarmonicIndex& idx) const;

 private:
  int dim_;
  int max_degree_;
  std::vector<Real> circle_cos_;
  std::vector<Real> circle_sin_;
  std::vector<std::vector<std::vector<Real>>> levels_;
};

// Orthonormal harmonics, all degrees <= max_degree, evaluated at a point.
// Values are solid harmonics |x|^n Y(x/|x|).
class HarmonicEvaluator {
 public:
  HarmonicEvaluator(int dim, int max_degree);
  const HarmonicCatalog& catalog() const { return catalog_; }
  std::vector<Real> evaluate(std::span<const Real> x) const;

 private:
  HarmonicCatalog catalog_;
  HarmonicNorms norms_;
};

}  // namespace ballharm
