#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ballharm/expansion.hpp"
#include "ballharm/polyalg.hpp"
#include "ballharm/quadrature.hpp"
#include "ballharm/rational.hpp"
#include "ballharm/real.hpp"

namespace ballharm {

// exp(L(x)) * sum_b P_b(x) * B(x)^(gamma - b), with L, B and P_b polynomials.
// Closed under partial derivatives, so every image of a test function keeps
// the same L, B and gamma.
class SymbolicFunction {
 public:
  SymbolicFunction(ExactPoly exp_arg, ExactPoly base, Rational gamma, std::map<int, ExactPoly> terms);
  static SymbolicFunction polynomial(const ExactPoly& p);

  int dim() const { return exp_arg_.dim(); }
  bool is_zero() const { return terms_.empty(); }
  const ExactPoly& exp_arg() const { return exp_arg_; }
  const ExactPoly& base() const { return base_; }
  const Rational& gamma() const { return gamma_; }
  const std::map<int, ExactPoly>& terms() const { return terms_; }
  bool same_family(const SymbolicFunction& other) const;

  Real evaluate(std::span<const Real> x) const;
  std::string to_string() const;

 private:
  ExactPoly exp_arg_;
  ExactPoly base_;
  Rational gamma_;
  std::map<int, ExactPoly> terms_;
};

SymbolicFunction diff(const SymbolicFunction& f, int axis);
SymbolicFunction laplacian(const SymbolicFunction& f);
SymbolicFunction angular_derivative(const SymbolicFunction& f, int i, int j);
SymbolicFunction laplace_beltrami(const SymbolicFunction& f);
SymbolicFunction iterate_laplacian(const SymbolicFunction& f, int s);
SymbolicFunction iterate_beltrami(const SymbolicFunction& f, int s);

// Values of every function at every rule node, in node order. All functions
// must share one family (exp argument, base and exponent).
std::vector<std::vector<Real>> evaluate_on_rule(const std::vector<SymbolicFunction>& fs, const BallQuadrature& rule);

enum class Smoothness { entire, sobolev };
enum class Shape { generic, radial, harmonic, spherical };

struct TestFunction {
  std::string name;
  std::string formula;
  int dim = 2;
  SymbolicFunction f;
  Smoothness smoothness = Smoothness::entire;
  Shape shape = Shape::generic;
  bool polynomial = false;
  // Predicted algebraic decay order of E_n(f)_mu is order_base + mu; zero when
  // the decay is faster than any power.
  double order_base = 0;

  // Empty when every image used by the experiment lies in its weighted L2
  // space; otherwise the reason it does not.
  std::string unsupported(bool odd, int s, const Rational& mu) const;
};

std::vector<std::string> registry_names();
TestFunction make_test_function(const std::string& name, int dim);

// Largest deviation between the symbolic images of f (up to s_max iterations)
// and finite differences of the lower-order images, at random points
// inside the ball, relative to max(1, |value|).
double finite_difference_check(const TestFunction& tf, int s_max, int points, unsigned seed);

struct RateConfig {
  int n_min = 4;
  int n_max = 40;
  int n_step = 2;
  int N = -1;             // default n_max + 12
  int quad_degree = -1;   // default 2N + 4
  int resolved_N() const { return N >= 0 ? N : n_max + 12; }
  int resolved_degree() const { return quad_degree >= 0 ? quad_degree : 2 * resolved_N() + 4; }
  void validate() const;
};

struct RateRow {
  int n = 0;
  double e_f = 0;
  double e_lap = 0;   // derivative-term sum
  double e_bel = 0;   // angular-term sum
  double ratio = 0;
  double slope = 0;   // local log-log slope of E_n(f)
  double corollary = 0;
  bool exact = false;
  bool reliable = true;
  std::vector<double> terms;  // per-image contributions, labelled by RateReport::term_labels
};

struct RateReport {
  std::string function;
  int dim = 2;
  Rational mu;
  int s = 0;
  bool odd = false;
  int N = 0;
  int quad_degree = 0;
  std::vector<std::string> term_labels;
  std::vector<RateRow> rows;
  double fitted_slope = 0;        // least squares log E_n(f) against log n
  double extrapolated_order = 0;  // decay order from the upper half, 1/n drift removed
  double image_norm = 0;  // ||Delta^s f||_{mu+2s} + ||Delta_0^s f||_mu for the even case

  // max ratio <= 3 x median over rows outside the exact regime.
  bool bounded() const;
  double max_ratio() const;
  double median_ratio() const;
  bool all_reliable() const;
};

// Caches expansions by (image, mu) so experiments that share images reuse them.
class RateSession {
 public:
  explicit RateSession(RateConfig config);
  const RateConfig& config() const { return config_; }

  RateReport measure_even(const TestFunction& tf, const Rational& mu, int s);
  RateReport measure_odd(const TestFunction& tf, const Rational& mu, int s);

  // Expansions of several images at one mu; zero images give empty tables.
  std::vector<std::shared_ptr<const CoefficientTable>> expand_images(const std::vector<SymbolicFunction>& images,
                                                                     const Rational& mu);
  std::size_t expansions_computed() const { return computed_; }

 private:
  RateConfig config_;
  std::map<std::string, std::shared_ptr<const CoefficientTable>> cache_;
  std::size_t computed_ = 0;
};

RateReport measure_even(const TestFunction& tf, const Rational& mu, int s, const RateConfig& config);
RateReport measure_odd(const TestFunction& tf, const Rational& mu, int s, const RateConfig& config);

// Columns n, E_f, E_lap, E_bel, ratio, slope, then corollary, exact, reliable
// and one column per image term.
void write_rate_csv(const RateReport& report, std::ostream& out);

}  // namespace ballharm
