#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ballharm/rational.hpp"

namespace ballharm {

// Dimensions above this are rejected; exponents are packed one byte per axis.
inline constexpr int kMaxDim = 8;
inline constexpr int kMaxDegree = 255;

class Monomial {
 public:
  Monomial() = default;
  static Monomial from_exponents(std::span<const int> exponents);
  static Monomial unit(int axis);

  int exponent(int axis) const {
    return static_cast<int>((bits_ >> shift(axis)) & 0xFFu);
  }
  int degree() const { return degree_; }
  std::uint64_t bits() const { return bits_; }

  // True when every exponent is even.
  bool all_even() const { return (bits_ & kParityMask) == 0; }

  Monomial operator*(Monomial other) const;
  // Caller guarantees exponent(axis) > 0.
  Monomial lowered(int axis) const;

  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }

  // Graded lexicographic order with x1 > x2 > ... .
  friend bool operator<(Monomial a, Monomial b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.bits_ < b.bits_;
  }

 private:
  static constexpr std::uint64_t kParityMask = 0x0101010101010101ull;
  static int shift(int axis) { return 8 * (kMaxDim - 1 - axis); }
  std::uint64_t bits_ = 0;
  int degree_ = 0;
};

class ExactPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit ExactPoly(int dim = 1);
  static ExactPoly constant(int dim, const Rational& c);
  static ExactPoly variable(int dim, int axis);
  static ExactPoly monomial(int dim, Monomial m, const Rational& c = 1);

  int dim() const { return dim_; }
  // Degree of the zero polynomial is -1.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(Monomial m) const;

  void add_term(Monomial m, const Rational& c);

  ExactPoly& operator+=(const ExactPoly& other);
  ExactPoly& operator-=(const ExactPoly& other);
  ExactPoly& operator*=(const Rational& c);
  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator*(ExactPoly a, const Rational& c) { return a *= c; }
  friend ExactPoly operator*(const Rational& c, ExactPoly a) { return a *= c; }
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend bool operator==(const ExactPoly& a, const ExactPoly& b);
  ExactPoly operator-() const;

  // Same polynomial viewed in new_dim >= dim variables.
  ExactPoly embed(int new_dim) const;

  // Instantiated for double, Rational and Real.
  template <class T>
  T evaluate(std::span<const T> x) const;

  std::string to_string() const;

 private:
  int dim_;
  Terms terms_;
};

enum class ArithOp { add, sub, mul };
ExactPoly poly_arith(const ExactPoly& a, const ExactPoly& b, ArithOp op);

ExactPoly diff(const ExactPoly& p, int axis);
ExactPoly laplacian(const ExactPoly& p);
// D_{i,j} = x_i d/dx_j - x_j d/dx_i, for 0 <= i < j < dim.
ExactPoly angular_derivative(const ExactPoly& p, int i, int j);
// Sum of D_{i,j}^2 over i < j.
ExactPoly laplace_beltrami(const ExactPoly& p);
ExactPoly norm_squared(int dim);
ExactPoly power(const ExactPoly& p, int k);
// Substitute x_axis -> c * x_axis.
ExactPoly scale_variable(const ExactPoly& p, int axis, const Rational& c);
// Univariate coefficient list (ascending) to a polynomial in x_axis.
ExactPoly univariate(int dim, int axis, const std::vector<Rational>& coeffs);
// Compose a univariate polynomial q with an arbitrary polynomial g: q(g).
ExactPoly compose(const std::vector<Rational>& q, const ExactPoly& g);

// Surface mean of xi^alpha over the unit sphere S^{d-1}.
Rational sphere_monomial_moment(Monomial alpha, int dim);
// b_mu * integral over the ball of x^alpha (1 - |x|^2)^mu.
Rational ball_monomial_moment(Monomial alpha, const Rational& mu, int dim);

Rational exact_inner_product(const ExactPoly& p, const ExactPoly& q, const Rational& mu);
Rational sphere_inner_product(const ExactPoly& p, const ExactPoly& q);

// Exact Gram matrices against cached moments. Each polynomial is turned into a
// linear functional on the monomials of the set, so an entry costs one short
// dot product.
class MomentGram {
 public:
  // Sphere moments when ball == false.
  MomentGram(int dim, const Rational& mu, bool ball = true);
  Rational moment(Monomial alpha);
  Rational inner(const ExactPoly& p, const ExactPoly& q);
  std::vector<std::vector<Rational>> gram(const std::vector<ExactPoly>& polys);
  // Sum over k of Gram(first[k]) entries, for vector-valued forms.
  std::vector<std::vector<Rational>> gram_sum(
      const std::vector<std::vector<ExactPoly>>& components);

 private:
  int dim_;
  Rational mu_;
  bool ball_;
  std::unordered_map<std::uint64_t, Rational> cache_;
};

}  // namespace ballharm
