#include "ballharm/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

#include "ballharm/polyalg.hpp"

namespace ballharm {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kAbsTol = 1e-14;

void record(CertificationReport& rep, const Real& got, const Rational& exact) {
  ++rep.checked;
  double err;
  if (exact == 0) {
    err = static_cast<double>(abs(got));
    if (err > kAbsTol) rep.ok = false;
  } else {
    Real ex = to_real(exact);
    err = static_cast<double>(abs(got - ex) / abs(ex));
    if (err > kRelTol) rep.ok = false;
  }
  rep.max_error = std::max(rep.max_error, err);
}

Monomial mono2(int a, int b) {
  int e[2] = {a, b};
  return Monomial::from_exponents(e);
}

}  // namespace

std::size_t SphereRule::size() const {
  std::size_t n = cos_phi.size();
  for (int m = 3; m <= dim; ++m) n *= levels[m].nodes.size();
  return n;
}

void SphereRule::point(std::size_t index, std::span<Real> out) const {
  const std::size_t M = cos_phi.size();
  std::size_t rest = index / M;
  std::size_t ip = index % M;
  // Decode level indices from the innermost level outward.
  std::vector<std::size_t> li(dim + 1, 0);
  for (int m = 3; m <= dim; ++m) {
    std::size_t K = levels[m].nodes.size();
    li[m] = rest % K;
    rest /= K;
  }
  out[0] = sin_phi[ip];
  out[1] = cos_phi[ip];
  for (int m = 3; m <= dim; ++m) {
    const Real& s = level_sqrt[m][li[m]];
    for (int a = 0; a < m - 1; ++a) out[a] *= s;
    out[m - 1] = levels[m].nodes[li[m]];
  }
}

Real SphereRule::weight(std::size_t index) const {
  const std::size_t M = cos_phi.size();
  Real w = Real(1) / M;
  std::size_t rest = index / M;
  for (int m = 3; m <= dim; ++m) {
    std::size_t K = levels[m].nodes.size();
    w *= levels[m].weights[rest % K];
    rest /= K;
  }
  return w;
}

BallQuadrature::BallQuadrature(int dim, const Real& mu, int degree) : dim_(dim), mu_(mu) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("ball rule: dimension must be in 2..8");
  if (!(mu > -1)) throw std::invalid_argument("ball rule: mu must exceed -1");
  if (degree < 0) throw std::invalid_argument("ball rule: negative degree");

  const int kr = (degree + 3) / 2;  // ceil((degree + 2) / 2)
  radial_ = gauss_jacobi_refined(kr, mu, Real(dim - 2) / 2);
  Real mass = pairwise_sum(radial_.weights);
  for (auto& w : radial_.weights) w /= mass;
  for (const auto& t : radial_.nodes) radius_.push_back(sqrt((1 + t) / 2));

  sphere_.dim = dim;
  const int M = degree + 1;
  const Real pi = real_pi();
  for (int j = 0; j < M; ++j) {
    Real phi = 2 * pi * j / M;
    sphere_.cos_phi.push_back(cos(phi));
    sphere_.sin_phi.push_back(sin(phi));
  }
  sphere_.levels.resize(dim + 1);
  sphere_.level_sqrt.resize(dim + 1);
  const int ku = std::max(1, (degree + 2) / 2);  // ceil((degree + 1) / 2)
  int exact = std::min(M - 1, 2 * (2 * kr - 1) + 1);
  for (int m = 3; m <= dim; ++m) {
    Real a = Real(m - 3) / 2;
    auto rule = gauss_jacobi_refined(ku, a, a);
    Real s = pairwise_sum(rule.weights);
    for (auto& w : rule.weights) w /= s;
    for (const auto& u : rule.nodes) sphere_.level_sqrt[m].push_back(sqrt(1 - u * u));
    sphere_.levels[m] = std::move(rule);
    exact = std::min(exact, 2 * ku - 1);
  }
  exact_degree_ = exact;

  CertificationReport rep = certify();
  if (!rep.ok) {
    throw std::runtime_error("ball rule failed certification, max error " + std::to_string(rep.max_error));
  }
}

void BallQuadrature::point(std::size_t index, std::span<Real> out) const {
  const std::size_t ns = sphere_.size();
  sphere_.point(index % ns, out);
  for (auto& v : out) v *= radius_[index / ns];
}

Real BallQuadrature::weight(std::size_t index) const {
  const std::size_t ns = sphere_.size();
  return radial_.weights[index / ns] * sphere_.weight(index % ns);
}

std::vector<std::vector<Real>> BallQuadrature::points() const {
  std::vector<std::vector<Real>> out;
  out.reserve(size());
  for_each_node([&](std::span<const Real> x, const Real&) { out.emplace_back(x.begin(), x.end()); });
  return out;
}

std::vector<Real> BallQuadrature::weights() const {
  std::vector<Real> out;
  out.reserve(size());
  for_each_node([&](std::span<const Real>, const Real& w) { out.push_back(w); });
  return out;
}

CertificationReport BallQuadrature::certify() const {
  CertificationReport rep;
  const int D = exact_degree_;
  const Rational mu_q = [&] {
    // Exact radial moments need mu as a rational; the working value is
    // converted exactly since binary floating values are dyadic rationals.
    Rational q;
    mpfr_get_q(q.get_mpq_t(), mu_.backend().data());
    return q;
  }();
  // Radial factor: moments of r^{2i}.
  {
    std::vector<PairwiseSum> acc(D / 2 + 1);
    for (std::size_t r = 0; r < radius_.size(); ++r) {
      Real v = radial_.weights[r];
      Real r2 = radius_[r] * radius_[r];
      for (auto& a : acc) {
        a.add(v);
        v *= r2;
      }
    }
    for (int i = 0; 2 * i <= D; ++i) {
      Rational exact = pochhammer(half(dim_), i) / pochhammer(Rational(mu_q + half(dim_) + 1), i);
      record(rep, acc[i].total(), exact);
    }
  }
  // Powers 0..D of each entry of a node list.
  auto powers = [D](const std::vector<Real>& xs) {
    std::vector<std::vector<Real>> p(xs.size(), std::vector<Real>(D + 1));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      p[i][0] = 1;
      for (int k = 1; k <= D; ++k) p[i][k] = p[i][k - 1] * xs[i];
    }
    return p;
  };
  // Circle factor: mean of sin^a cos^b.
  {
    const int M = sphere_.circle_points();
    auto ps = powers(sphere_.sin_phi);
    auto pc = powers(sphere_.cos_phi);
    for (int a = 0; a <= D; ++a) {
      for (int b = 0; a + b <= D; ++b) {
        PairwiseSum acc;
        for (int j = 0; j < M; ++j) acc.add(ps[j][a] * pc[j][b]);
        record(rep, acc.total() / M, sphere_monomial_moment(mono2(a, b), 2));
      }
    }
  }
  // Level factors: sum w (1 - u^2)^{a/2} u^b for even a.
  for (int m = 3; m <= dim_; ++m) {
    const auto& lev = sphere_.levels[m];
    auto pu = powers(lev.nodes);
    auto psq = powers(sphere_.level_sqrt[m]);
    for (int a = 0; a <= D; a += 2) {
      for (int b = 0; a + b <= D; ++b) {
        PairwiseSum acc;
        for (std::size_t i = 0; i < lev.nodes.size(); ++i) acc.add(lev.weights[i] * psq[i][a] * pu[i][b]);
        std::vector<int> hi(m, 0), lo(m - 1, 0);
        hi[0] = a;
        hi[m - 1] = b;
        lo[0] = a;
        Rational lower = sphere_monomial_moment(Monomial::from_exponents(lo), m - 1);
        Rational exact = sphere_monomial_moment(Monomial::from_exponents(hi), m) / lower;
        record(rep, acc.total(), exact);
      }
    }
  }
  return rep;
}

BallQuadrature build_ball_rule(int d, const Real& mu, int degree) { return BallQuadrature(d, mu, degree); }

CertificationReport certify_monomials(const BallQuadrature& rule, int max_degree) {
  const int d = rule.dim();
  Rational mu_q;
  mpfr_get_q(mu_q.get_mpq_t(), rule.mu().backend().data());
  // Enumerate exponent vectors of total degree <= max_degree.
  std::vector<std::vector<int>> exps;
  std::vector<int> e(d, 0);
  std::function<void(int, int)> rec = [&](int axis, int left) {
    if (axis == d) {
      exps.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[axis] = k;
      rec(axis + 1, left - k);
    }
    e[axis] = 0;
  };
  rec(0, max_degree);
  std::vector<PairwiseSum> acc(exps.size());
  rule.for_each_node([&](std::span<const Real> x, const Real& w) {
    for (std::size_t k = 0; k < exps.size(); ++k) {
      Real v = w;
      for (int a = 0; a < d; ++a) {
        for (int p = 0; p < exps[k][a]; ++p) v *= x[a];
      }
      acc[k].add(v);
    }
  });
  CertificationReport rep;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    record(rep, acc[k].total(), ball_monomial_moment(Monomial::from_exponents(exps[k]), mu_q, d));
  }
  return rep;
}

Real inner_product(const RealFunction& f, const RealFunction& g, const BallQuadrature& rule) {
  PairwiseSum acc;
  rule.for_each_node([&](std::span<const Real> x, const Real& w) { acc.add(w * f(x) * g(x)); });
  return acc.total();
}

}  // namespace ballharm
