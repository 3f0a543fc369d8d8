#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ballharm/orthopoly1d.hpp"
#include "ballharm/real.hpp"

namespace ballharm {

using RealFunction = std::function<Real(std::span<const Real>)>;

// Product rule on S^{d-1}. The circle uses M equispaced angles with
// xi = (sin phi, cos phi); each further level m adds a Gauss rule in
// u = xi_m for the weight (1 - u^2)^{(m-3)/2} and maps
// xi = (sqrt(1 - u^2) eta, u). Weights of every factor sum to one.
struct SphereRule {
  int dim = 2;
  std::vector<Real> cos_phi;
  std::vector<Real> sin_phi;
  // levels[m] for m = 3..dim; levels[0..2] are unused.
  std::vector<GaussRule1D<Real>> levels;
  std::vector<std::vector<Real>> level_sqrt;  // sqrt(1 - u^2) per node

  int circle_points() const { return static_cast<int>(cos_phi.size()); }
  std::size_t size() const;
  // Node order: the circle index varies fastest, then level 3, ..., level d.
  void point(std::size_t index, std::span<Real> out) const;
  Real weight(std::size_t index) const;
};

struct CertificationReport {
  bool ok = true;
  int checked = 0;
  double max_error = 0;  // relative for nonzero moments, absolute otherwise
};

class BallQuadrature {
 public:
  BallQuadrature(int dim, const Real& mu, int degree);

  int dim() const { return dim_; }
  const Real& mu() const { return mu_; }
  int exact_degree() const { return exact_degree_; }
  const GaussRule1D<Real>& radial() const { return radial_; }  // weights sum to one
  const std::vector<Real>& radius() const { return radius_; }  // sqrt((1 + t)/2)
  const SphereRule& sphere() const { return sphere_; }

  std::size_t size() const { return radial_.nodes.size() * sphere_.size(); }
  // Node order: radial index outermost, then the sphere order.
  void point(std::size_t index, std::span<Real> out) const;
  Real weight(std::size_t index) const;

  template <class F>
  void for_each_node(F&& fn) const {
    std::vector<Real> x(dim_);
    const std::size_t ns = sphere_.size();
    for (std::size_t r = 0; r < radial_.nodes.size(); ++r) {
      for (std::size_t s = 0; s < ns; ++s) {
        sphere_.point(s, x);
        for (auto& v : x) v *= radius_[r];
        fn(std::span<const Real>(x), radial_.weights[r] * sphere_.weight(s));
      }
    }
  }

  // Materialized node and weight lists; intended for small rules.
  std::vector<std::vector<Real>> points() const;
  std::vector<Real> weights() const;

  // Factorized check of every monomial moment up to exact_degree().
  CertificationReport certify() const;

 private:
  int dim_;
  Real mu_;
  int exact_degree_;
  GaussRule1D<Real> radial_;
  std::vector<Real> radius_;
  SphereRule sphere_;
};

// Radial rule with ceil((degree + 2)/2) nodes, circle with degree + 1 angles,
// ceil((degree + 1)/2) nodes per further level. Certified on construction;
// throws std::runtime_error if certification fails.
BallQuadrature build_ball_rule(int d, const Real& mu, int degree);

// Brute-force moment check over all nodes, for monomials of degree <= max_degree.
CertificationReport certify_monomials(const BallQuadrature& rule, int max_degree);

// Sum of w f g over the rule, reduced pairwise.
Real inner_product(const RealFunction& f, const RealFunction& g, const BallQuadrature& rule);

}  // namespace ballharm
