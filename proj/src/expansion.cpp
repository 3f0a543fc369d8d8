#include "ballharm/expansion.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ballharm/orthopoly1d.hpp"
#include "parallel.hpp"

namespace ballharm {

namespace {

// First catalog position of each degree, plus a sentinel.
std::vector<std::size_t> degree_starts(const HarmonicCatalog& cat) {
  const int d = cat.dim();
  std::vector<std::size_t> start(cat.max_degree() + 2, cat.size());
  for (std::size_t p = cat.size(); p-- > 0;) start[cat.degree(d, p)] = p;
  return start;
}

// Residuals of f_norm_sq minus the in-table energy below this fraction of
// f_norm_sq are rounding; tails below the smaller one count as exact.
Real residual_floor() { return pow(Real(10), -static_cast<int>(kRealDigits) + 10); }
Real exact_floor() { return pow(Real(10), -2 * static_cast<int>(kRealDigits) + 30); }

}  // namespace

CoefficientTable::CoefficientTable(int dim, const Real& mu, int max_degree)
    : dim_(dim), mu_(mu), max_degree_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("table: negative degree");
  catalog_ = std::make_shared<HarmonicCatalog>(dim, max_degree);
  auto start = degree_starts(*catalog_);
  offsets_.resize(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    for (int j = 0; 2 * j <= n; ++j) {
      int l = n - 2 * j;
      offsets_[n].push_back(entries_.size());
      Real h = h_norm(mu, n, j, dim);
      for (std::size_t p = start[l]; p < start[l + 1]; ++p) {
        entries_.push_back({n, j, static_cast<int>(p), Real(0), h});
      }
    }
  }
}

const CoefficientEntry& CoefficientTable::at(int n, int j, const HarmonicIndex& nu) const {
  if (n < 0 || n > max_degree_ || j < 0 || 2 * j > n || nu.degree() != n - 2 * j) {
    throw std::out_of_range("coefficient index outside table");
  }
  long pos = catalog_->position(nu);
  if (pos < 0) throw std::out_of_range("harmonic index not in table");
  std::size_t first = offsets_[n][j];
  std::size_t k = first + (static_cast<std::size_t>(pos) - static_cast<std::size_t>(entries_[first].nu));
  return entries_[k];
}

Real CoefficientTable::degree_energy(int n) const {
  if (n < 0 || n > max_degree_) throw std::out_of_range("degree outside table");
  std::size_t begin = offsets_[n][0];
  std::size_t end = n + 1 <= max_degree_ ? offsets_[n + 1][0] : entries_.size();
  PairwiseSum acc;
  for (std::size_t k = begin; k < end; ++k) acc.add(entries_[k].h * entries_[k].coeff * entries_[k].coeff);
  return acc.total();
}

namespace {

// Harmonic analysis of one radial slice: sphere values -> orthonormal
// harmonic coefficients, one tensor level at a time.
class SphereAnalyzer {
 public:
  SphereAnalyzer(const SphereRule& rule, const HarmonicCatalog& cat, const HarmonicNorms& norms);
  void analyze(std::span<const Real> values, std::vector<Real>& out) const { level(cat_.dim(), values, out); }

 private:
  struct LevelTable {
    std::size_t K = 0;
    std::size_t pairs = 0;
    bool middle = false;
    std::vector<std::size_t> offset;          // per parent degree n'
    std::vector<std::vector<Real>> theta;     // [i][offset[n'] + k]
  };

  void level(int m, std::span<const Real> values, std::vector<Real>& out) const;
  void circle(std::span<const Real> v, std::vector<Real>& out) const;

  const SphereRule& rule_;
  const HarmonicCatalog& cat_;
  int N_;
  int M_;
  int half_;
  std::vector<std::vector<Real>> cosk_;
  std::vector<std::vector<Real>> sink_;
  std::vector<Real> scale_cos_;
  std::vector<Real> scale_sin_;
  std::vector<LevelTable> levels_;
};

SphereAnalyzer::SphereAnalyzer(const SphereRule& rule, const HarmonicCatalog& cat, const HarmonicNorms& norms)
    : rule_(rule), cat_(cat), N_(cat.max_degree()) {
  M_ = rule.circle_points();
  half_ = (M_ - 1) / 2;
  cosk_.assign(N_ + 1, std::vector<Real>(half_));
  sink_.assign(N_ + 1, std::vector<Real>(half_));
  scale_cos_.resize(N_ + 1);
  scale_sin_.resize(N_ + 1);
  for (int k = 0; k <= N_; ++k) {
    for (int m = 1; m <= half_; ++m) {
      std::size_t idx = static_cast<std::size_t>(k) * m % M_;
      cosk_[k][m - 1] = rule.cos_phi[idx];
      sink_[k][m - 1] = rule.sin_phi[idx];
    }
    scale_cos_[k] = 1 / (M_ * sqrt(norms.circle(k, false)));
    if (k >= 1) scale_sin_[k] = 1 / (M_ * sqrt(norms.circle(k, true)));
  }
  levels_.resize(cat.dim() + 1);
  for (int m = 3; m <= cat.dim(); ++m) {
    const auto& g = rule.levels[m];
    LevelTable& lt = levels_[m];
    lt.K = g.nodes.size();
    lt.pairs = lt.K / 2;
    lt.middle = lt.K % 2 == 1;
    std::size_t flat = 0;
    for (int np = 0; np <= N_; ++np) {
      lt.offset.push_back(flat);
      flat += N_ - np + 1;
    }
    std::size_t used = lt.pairs + (lt.middle ? 1 : 0);
    lt.theta.assign(used, std::vector<Real>(flat));
    for (std::size_t i = 0; i < used; ++i) {
      const Real& u = g.nodes[i];
      Real sq_pow = g.weights[i];
      for (int np = 0; np <= N_; ++np) {
        Real lambda = Real(np) + Real(m - 2) / 2;
        auto c = gegenbauer_sequence(N_ - np, lambda, u);
        for (int k = 0; k <= N_ - np; ++k) {
          lt.theta[i][lt.offset[np] + k] = sq_pow * c[k] / sqrt(norms.level(m, np, k));
        }
        sq_pow *= rule.level_sqrt[m][i];
      }
    }
  }
}

void SphereAnalyzer::circle(std::span<const Real> v, std::vector<Real>& out) const {
  out.assign(2 * N_ + 1, Real(0));
  std::vector<Real> s(half_), dlt(half_);
  for (int m = 1; m <= half_; ++m) {
    s[m - 1] = v[m] + v[M_ - m];
    dlt[m - 1] = v[m] - v[M_ - m];
  }
  const bool even = M_ % 2 == 0;
  for (int k = 0; k <= N_; ++k) {
    Real cs = v[0];
    if (even) cs += (k % 2 ? -v[M_ / 2] : v[M_ / 2]);
    for (int m = 0; m < half_; ++m) fma_accumulate(cs, s[m], cosk_[k][m]);
    out[k == 0 ? 0 : 2 * k - 1] = cs * scale_cos_[k];
    if (k >= 1) {
      Real sn = 0;
      for (int m = 0; m < half_; ++m) fma_accumulate(sn, dlt[m], sink_[k][m]);
      out[2 * k] = sn * scale_sin_[k];
    }
  }
}

void SphereAnalyzer::level(int m, std::span<const Real> values, std::vector<Real>& out) const {
  if (m == 2) {
    circle(values, out);
    return;
  }
  const LevelTable& lt = levels_[m];
  const std::size_t G = values.size() / lt.K;
  std::vector<std::vector<Real>> subs(lt.K);
  for (std::size_t i = 0; i < lt.K; ++i) level(m - 1, values.subspan(i * G, G), subs[i]);
  const std::size_t H = subs[0].size();
  for (std::size_t i = 0; i < lt.pairs; ++i) {
    auto& a = subs[i];
    auto& b = subs[lt.K - 1 - i];
    for (std::size_t p = 0; p < H; ++p) {
      Real sum = a[p] + b[p];
      b[p] = a[p] - b[p];
      a[p] = std::move(sum);
    }
  }
  const std::size_t size = cat_.size(m);
  out.assign(size, Real(0));
  for (std::size_t pos = 0; pos < size; ++pos) {
    int p = cat_.parent(m, pos);
    int k = cat_.last(m, pos);
    int np = cat_.degree(m - 1, p);
    std::size_t col = lt.offset[np] + k;
    Real acc = 0;
    if (k % 2 == 0) {
      for (std::size_t i = 0; i < lt.pairs; ++i) fma_accumulate(acc, lt.theta[i][col], subs[i][p]);
      if (lt.middle) fma_accumulate(acc, lt.theta[lt.pairs][col], subs[lt.pairs][p]);
    } else {
      for (std::size_t i = 0; i < lt.pairs; ++i) fma_accumulate(acc, lt.theta[i][col], subs[lt.K - 1 - i][p]);
    }
    out[pos] = std::move(acc);
  }
}

}  // namespace

CoefficientTable expand_values(std::span<const Real> values, int N, const BallQuadrature& rule) {
  if (N < 0) throw std::invalid_argument("expand: negative degree");
  if (rule.exact_degree() < 2 * N) {
    throw std::invalid_argument("expand: rule exact degree " + std::to_string(rule.exact_degree()) +
                                " is below 2N = " + std::to_string(2 * N));
  }
  if (values.size() != rule.size()) throw std::invalid_argument("expand: value count does not match rule");
  const int d = rule.dim();
  CoefficientTable table(d, rule.mu(), N);
  table.exact_degree = rule.exact_degree();
  const HarmonicCatalog& cat = table.catalog();
  HarmonicNorms norms(d, N);
  SphereAnalyzer analyzer(rule.sphere(), cat, norms);

  const std::size_t R = rule.radial().nodes.size();
  const std::size_t S = rule.sphere().size();
  std::vector<Real> sphere_w(S);
  for (std::size_t s = 0; s < S; ++s) sphere_w[s] = rule.sphere().weight(s);

  std::vector<std::vector<Real>> A(R);
  std::vector<Real> slice_norm(R);
  detail::parallel_for(R, [&](std::size_t r) {
    auto slice = values.subspan(r * S, S);
    analyzer.analyze(slice, A[r]);
    PairwiseSum acc;
    for (std::size_t s = 0; s < S; ++s) acc.add(sphere_w[s] * slice[s] * slice[s]);
    slice_norm[r] = acc.total();
  });
  PairwiseSum total;
  for (std::size_t r = 0; r < R; ++r) total.add(rule.radial().weights[r] * slice_norm[r]);
  table.f_norm_sq = total.total();

  auto start = degree_starts(cat);
  const Real& mu = rule.mu();
  const auto& t = rule.radial().nodes;
  auto& entries = table.entries();
  detail::parallel_for(static_cast<std::size_t>(N + 1), [&](std::size_t li) {
    const int l = static_cast<int>(li);
    const int jmax = (N - l) / 2;
    const Real beta = Real(l) + Real(d - 2) / 2;
    // rw[j][r] = w_r r^l P_j^{(mu, beta)}(t_r)
    std::vector<std::vector<Real>> rw(jmax + 1, std::vector<Real>(R));
    for (std::size_t r = 0; r < R; ++r) {
      auto p = jacobi_sequence(jmax, mu, beta, t[r]);
      Real base = rule.radial().weights[r] * pow(rule.radius()[r], l);
      for (int j = 0; j <= jmax; ++j) rw[j][r] = base * p[j];
    }
    for (int j = 0; j <= jmax; ++j) {
      const int n = l + 2 * j;
      std::size_t first = table.offset(n, j);
      for (std::size_t pos = start[l]; pos < start[l + 1]; ++pos) {
        Real acc = 0;
        for (std::size_t r = 0; r < R; ++r) fma_accumulate(acc, rw[j][r], A[r][pos]);
        CoefficientEntry& e = entries[first + (pos - start[l])];
        e.coeff = acc / e.h;
      }
    }
  });
  return table;
}

CoefficientTable expand(const RealFunction& f, const Real& mu, int N, const BallQuadrature& rule) {
  if (mu != rule.mu()) throw std::invalid_argument("expand: rule was built for a different mu");
  std::vector<Real> values;
  values.reserve(rule.size());
  rule.for_each_node([&](std::span<const Real> x, const Real&) { values.push_back(f(x)); });
  return expand_values(values, N, rule);
}

Real partial_sum_eval(const CoefficientTable& table, int n, std::span<const Real> x) {
  if (n < 0 || n > table.max_degree()) throw std::invalid_argument("partial_sum_eval: degree outside table");
  BallBasisEvaluator ev(table.dim(), n, table.mu());
  auto vals = ev.evaluate_all(x);
  const std::size_t end = n + 1 <= table.max_degree() ? table.offset(n + 1, 0) : table.entries().size();
  PairwiseSum acc;
  for (std::size_t k = 0; k < end; ++k) acc.add(table.entries()[k].coeff * vals[k]);
  return acc.total();
}

ErrorEstimate best_error(const CoefficientTable& table, int n) {
  const int N = table.max_degree();
  if (n < 0 || n > N) throw std::invalid_argument("best_error: degree outside table");
  // E_n^2 = (energy at degrees n+1..N) + (f_norm_sq - energy at degrees <= N).
  // Summing the in-table tail directly keeps relative accuracy when E_n is
  // far below f_norm_sq; the residual is dropped once it is rounding noise.
  std::vector<Real> energy(N + 1);
  for (int m = 0; m <= N; ++m) energy[m] = table.degree_energy(m);
  Real scale = table.f_norm_sq > 0 ? table.f_norm_sq : Real(1);
  Real residual = table.f_norm_sq - pairwise_sum(energy);
  if (abs(residual) <= residual_floor() * scale) residual = 0;
  PairwiseSum tail;
  for (int m = n + 1; m <= N; ++m) tail.add(energy[m]);
  ErrorEstimate est;
  est.squared = tail.total() + residual;
  PairwiseSum window;
  for (int m = std::max(n + 1, N - 5); m <= N; ++m) window.add(energy[m]);
  est.tail_window = window.total();
  if (est.squared <= exact_floor() * scale) {
    est.exact = true;
    est.value = 0;
    est.reliable = true;
    return est;
  }
  est.value = sqrt(est.squared);
  est.reliable = est.tail_window < est.squared / 100;
  return est;
}

namespace {

CoefficientTable derived_table(int d, const Real& mu, int N, int exact_degree) {
  CoefficientTable out(d, mu, N);
  out.exact_degree = exact_degree;
  out.derived = true;
  return out;
}

void close_derived(CoefficientTable& out) {
  PairwiseSum acc;
  for (int m = 0; m <= out.max_degree(); ++m) acc.add(out.degree_energy(m));
  out.f_norm_sq = acc.total();
}

}  // namespace

CoefficientTable coeff_laplacian_map(const CoefficientTable& table) {
  const int N = table.max_degree();
  if (N < 2) throw std::invalid_argument("coeff_laplacian_map: need N >= 2");
  const int d = table.dim();
  CoefficientTable out = derived_table(d, table.mu() + 2, N - 2, table.exact_degree);
  for (auto& e : out.entries()) {
    const int n = e.n + 2;
    const auto& src = table.entries()[table.offset(n, e.j + 1) + (e.nu - out.entries()[out.offset(e.n, e.j)].nu)];
    e.coeff = kappa(table.mu(), n - e.j - 1, d) * src.coeff;
  }
  close_derived(out);
  return out;
}

CoefficientTable coeff_beltrami_map(const CoefficientTable& table) {
  const int d = table.dim();
  CoefficientTable out = derived_table(d, table.mu(), table.max_degree(), table.exact_degree);
  for (std::size_t k = 0; k < out.entries().size(); ++k) {
    auto& e = out.entries()[k];
    e.coeff = Real(beltrami_eigenvalue(e.n - 2 * e.j, d)) * table.entries()[k].coeff;
  }
  close_derived(out);
  return out;
}

namespace {

struct ExactBasis {
  std::vector<BallBasisIndex> index;
  std::vector<ExactPoly> poly;
  std::vector<Rational> norm;  // <P, P>_mu
};

ExactBasis exact_basis(int d, const Rational& mu, int n) {
  ExactBasis b;
  for (int m = 0; m <= n; ++m) {
    for (auto& i : enumerate_ball_indices(m, d)) {
      b.poly.push_back(exact_ball_basis(mu, i));
      b.norm.push_back(h_norm(mu, i.n, i.j, d) * sphere_norm(i.nu));
      b.index.push_back(std::move(i));
    }
  }
  return b;
}

}  // namespace

ExactPoly exact_partial_sum(const ExactPoly& f, const Rational& mu, int n) {
  const int d = f.dim();
  if (d < 2) throw std::invalid_argument("exact_partial_sum: need d >= 2");
  ExactPoly out(d);
  if (n < 0) return out;
  ExactBasis b = exact_basis(d, mu, n);
  MomentGram g(d, mu);
  for (std::size_t k = 0; k < b.poly.size(); ++k) {
    Rational c = g.inner(f, b.poly[k]) / b.norm[k];
    if (c != 0) out += b.poly[k] * c;
  }
  return out;
}

ExactPoly commuting_check(const ExactPoly& f, const Rational& mu, int n, int axis) {
  if (n < 1) throw std::invalid_argument("commuting_check: need n >= 1");
  return diff(exact_partial_sum(f, mu, n), axis) - exact_partial_sum(diff(f, axis), mu + 1, n - 1);
}

ExactPoly commuting_check_angular(const ExactPoly& f, const Rational& mu, int n, int i, int j) {
  return angular_derivative(exact_partial_sum(f, mu, n), i, j) -
         exact_partial_sum(angular_derivative(f, i, j), mu, n);
}

void write_csv(const CoefficientTable& table, std::ostream& out) {
  out << "# d=" << table.dim() << "\n";
  out << "# mu=" << format_real(table.mu()) << "\n";
  out << "# N=" << table.max_degree() << "\n";
  out << "# exact_degree=" << table.exact_degree << "\n";
  out << "# f_norm_sq=" << format_real(table.f_norm_sq) << "\n";
  out << "# derived=" << (table.derived ? 1 : 0) << "\n";
  Real gap;
  if (table.recorded_parseval_gap) {
    gap = *table.recorded_parseval_gap;
  } else {
    PairwiseSum energy;
    for (int m = 0; m <= table.max_degree(); ++m) energy.add(table.degree_energy(m));
    gap = table.f_norm_sq - energy.total();
  }
  out << "# parseval_gap=" << format_real(gap) << "\n";
  out << "n,j,nu,coeff,h\n";
  const auto& cat = table.catalog();
  for (const auto& e : table.entries()) {
    out << e.n << ',' << e.j << ',' << cat.indices(table.dim())[e.nu].to_string('-') << ','
        << format_real(e.coeff) << ',' << format_real(e.h) << "\n";
  }
}

CoefficientTable read_csv(std::istream& in) {
  std::map<std::string, std::string> header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("read_csv: malformed header line");
    header[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  if (line != "n,j,nu,coeff,h") throw std::runtime_error("read_csv: missing column header");
  for (const char* key : {"d", "mu", "N", "exact_degree", "f_norm_sq", "derived"}) {
    if (!header.count(key)) throw std::runtime_error(std::string("read_csv: missing header ") + key);
  }
  CoefficientTable table(std::stoi(header["d"]), Real(header["mu"]), std::stoi(header["N"]));
  table.exact_degree = std::stoi(header["exact_degree"]);
  table.f_norm_sq = Real(header["f_norm_sq"]);
  table.derived = header["derived"] == "1";
  if (header.count("parseval_gap")) table.recorded_parseval_gap = Real(header["parseval_gap"]);
  for (auto& e : table.entries()) {
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: table truncated");
    std::stringstream ss(line);
    std::string n, j, nu, coeff, h;
    std::getline(ss, n, ',');
    std::getline(ss, j, ',');
    std::getline(ss, nu, ',');
    std::getline(ss, coeff, ',');
    std::getline(ss, h, ',');
    HarmonicIndex idx = parse_harmonic_index(nu, '-');
    if (std::stoi(n) != e.n || std::stoi(j) != e.j || !(idx == table.catalog().indices(table.dim())[e.nu])) {
      throw std::runtime_error("read_csv: row order does not match the table layout");
    }
    e.coeff = Real(coeff);
  }
  return table;
}

}  // namespace ballharm
