#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ballharm/expansion.hpp"
#include "ballharm/rates.hpp"
#include "ballharm/verify.hpp"

using namespace ballharm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitReliability = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string suite;
  std::string mode;
  std::vector<int> dims;
  std::vector<std::string> mu_text;
  int N = 20;
  int n_min = 4;
  int n_max = 40;
  int n_step = 2;
  int N_rates = -1;
  int s = 1;
  std::string function;
  std::string out;
  int quad_degree = -1;
  unsigned seed = 20240607;
  bool list = false;
};

Rational parse_mu(const std::string& text) {
  Rational mu;
  try {
    mu = parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError("--mu: " + std::string(e.what()));
  }
  if (mu <= -1) throw ConfigError("--mu must exceed -1");
  return mu;
}

int single_dim(const RunConfig& c, int fallback) {
  if (c.dims.empty()) return fallback;
  if (c.dims.size() > 1) throw ConfigError("--d takes a single value for this command");
  int d = c.dims.front();
  if (d < 2 || d > kMaxDim) throw ConfigError("--d must be between 2 and " + std::to_string(kMaxDim));
  return d;
}

Rational single_mu(const RunConfig& c) {
  if (c.mu_text.empty()) return Rational(0);
  if (c.mu_text.size() > 1) throw ConfigError("--mu takes a single value for this command");
  return parse_mu(c.mu_text.front());
}

// Writes to --out when given, otherwise to stdout.
void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + c.out + " for writing");
  f << text;
}

void print_list() {
  std::cout << "verify suites:\n";
  for (const auto& s : verify_suites()) {
    std::cout << "  " << s.name << ": " << s.summary << "\n";
    for (const auto& c : s.checks) std::cout << "    - " << c << "\n";
  }
  std::cout << "test functions:\n";
  for (const auto& name : registry_names()) {
    auto tf = make_test_function(name, 3);
    std::cout << "  " << name << ": " << tf.formula << "\n";
  }
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions o;
  for (int d : c.dims) {
    if (d < 2 || d > 5) throw ConfigError("verify: --d must be between 2 and 5");
  }
  o.dims = c.dims;
  for (const auto& m : c.mu_text) o.mus.push_back(parse_mu(m));
  o.seed = c.seed;
  std::vector<CheckResult> results;
  try {
    results = run_suite(c.suite, o);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << (r.ok ? "PASS " : "FAIL ") << r.label << " [" << r.cases << " cases]";
    if (r.detail != std::to_string(r.cases) + " cases") std::cout << " " << r.detail;
    std::cout << "\n";
    all_ok = all_ok && r.ok;
  }
  std::cout << (all_ok ? "all checks passed" : "some checks failed") << "\n";
  return all_ok ? kExitPass : kExitFail;
}

TestFunction lookup_function(const std::string& name, int d) {
  try {
    return make_test_function(name, d);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int cmd_expand(const RunConfig& c) {
  if (c.function.empty()) throw ConfigError("expand needs --f");
  const int d = single_dim(c, 2);
  const Rational mu = single_mu(c);
  if (c.N < 0) throw ConfigError("--N must be nonnegative");
  const int degree = c.quad_degree >= 0 ? c.quad_degree : 2 * c.N + 20;
  if (degree < 2 * c.N) throw ConfigError("--quad-degree must be at least 2N");
  auto tf = lookup_function(c.function, d);
  std::vector<SymbolicFunction> image{tf.f};

  auto run = [&](int D) {
    BallQuadrature rule(d, to_real(mu), D);
    auto values = evaluate_on_rule(image, rule);
    return expand_values(values[0], c.N, rule);
  };
  CoefficientTable table = run(degree);
  // Rerun on a finer rule; coefficients that move signal an under-resolved rule.
  CoefficientTable finer = run(degree + 10);
  Real moved = 0;
  for (std::size_t k = 0; k < table.entries().size(); ++k) {
    moved = std::max(moved, Real(abs(table.entries()[k].coeff - finer.entries()[k].coeff)));
  }
  std::ostringstream csv;
  write_csv(table, csv);
  emit(c, csv.str());

  auto err = best_error(table, c.N);
  std::ostream& log = c.out.empty() ? std::cerr : std::cout;
  log << "expand " << c.function << " d=" << d << " mu=" << to_string(mu) << " N=" << c.N
      << " quad_degree=" << degree << "\n";
  log << "  f_norm_sq=" << format_real(table.f_norm_sq, 12) << "  E_N=" << format_real(err.value, 6)
      << "  coefficient change on finer rule=" << format_real(moved, 3) << "\n";
  if (!err.reliable) log << "  warning: tail energy at degrees N-5..N is not below 1% of E_N^2\n";
  if (moved > Real(1e-9)) {
    log << "  error: coefficients not converged in the quadrature degree\n";
    return kExitReliability;
  }
  return kExitPass;
}

void print_rate_summary(std::ostream& os, const RateReport& r) {
  os << "rates " << (r.odd ? "odd" : "even") << " " << r.function << " d=" << r.dim << " mu=" << to_string(r.mu)
     << " s=" << r.s << " N=" << r.N << " quad_degree=" << r.quad_degree << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%5s %14s %14s %14s %12s %9s\n", "n", "E_f", "E_lap", "E_bel", "ratio", "slope");
  os << buf;
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%5d %14.6e %14.6e %14.6e %12.6g %9.3f%s%s\n", row.n, row.e_f, row.e_lap, row.e_bel,
                  row.ratio, row.slope, row.exact ? "  exact" : "", row.reliable ? "" : "  (tail)");
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "max ratio %.6g, median %.6g: %s; fitted slope %.3f, extrapolated order %.3f\n",
                r.max_ratio(), r.median_ratio(), r.bounded() ? "bounded" : "NOT bounded", r.fitted_slope,
                r.extrapolated_order);
  os << buf;
  if (!r.all_reliable()) {
    os << "note: rows marked (tail) hold at least 1% of E_n^2 in degrees N-5..N; E_n itself comes from the full\n"
          "quadrature norm and is not truncated at N\n";
  }
}

int cmd_rates(const RunConfig& c) {
  if (c.function.empty()) throw ConfigError("rates needs --f");
  const int d = single_dim(c, 2);
  const Rational mu = single_mu(c);
  RateConfig rc;
  rc.n_min = c.n_min;
  rc.n_max = c.n_max;
  rc.n_step = c.n_step;
  rc.N = c.N_rates;
  rc.quad_degree = c.quad_degree;
  try {
    rc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const TestFunction tf = lookup_function(c.function, d);
  const bool odd = c.mode == "odd";
  if (c.s < 0 || (!odd && c.s < 1)) throw ConfigError(odd ? "--s must be >= 0" : "--s must be >= 1 for even rates");
  std::string why = tf.unsupported(odd, c.s, mu);
  if (!why.empty()) throw ConfigError(why);
  RateSession session(rc);
  RateReport report = odd ? session.measure_odd(tf, mu, c.s) : session.measure_even(tf, mu, c.s);
  std::ostringstream csv;
  write_rate_csv(report, csv);
  emit(c, csv.str());
  print_rate_summary(c.out.empty() ? std::cerr : std::cout, report);
  return report.bounded() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal expansions on the unit ball: identity checks, coefficients and approximation rates"};
  app.require_subcommand(0, 1);
  RunConfig c;
  app.add_flag("--list", c.list, "List verify suites and test functions");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--d", c.dims, "Dimension");
    sub->add_option("--mu", c.mu_text, "Weight parameter, rational (1/2) or decimal");
    sub->add_option("--out", c.out, "Output file (default stdout)");
    sub->add_option("--quad-degree", c.quad_degree, "Quadrature exactness degree override");
    sub->add_option("--seed", c.seed, "Seed for randomized fixtures");
    sub->add_flag("--list", c.list, "List verify suites and test functions");
  };

  auto* verify = app.add_subcommand("verify", "Run exact and numeric identity suites");
  verify->add_option("suite", c.suite, "identities | orthogonality | appendix | commuting | all")
      ->check(CLI::IsMember({"identities", "orthogonality", "appendix", "commuting", "all"}));
  add_common(verify);

  auto* expand_cmd = app.add_subcommand("expand", "Expand a registered function and write its coefficients");
  add_common(expand_cmd);
  expand_cmd->add_option("--f", c.function, "Registered function name");
  expand_cmd->add_option("--N", c.N, "Maximum total degree");

  auto* rates = app.add_subcommand("rates", "Measure best-approximation rates and theorem ratios");
  rates->add_option("mode", c.mode, "even | odd")->check(CLI::IsMember({"even", "odd"}));
  add_common(rates);
  rates->add_option("--f", c.function, "Registered function name");
  rates->add_option("--s", c.s, "Order parameter s");
  rates->add_option("--n-min", c.n_min, "Smallest n");
  rates->add_option("--n-max", c.n_max, "Largest n");
  rates->add_option("--n-step", c.n_step, "Step in n");
  rates->add_option("--N", c.N_rates, "Expansion degree (default n-max + 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (c.list) {
      print_list();
      return kExitPass;
    }
    if (verify->parsed()) {
      if (c.suite.empty()) throw ConfigError("verify needs a suite name");
      return cmd_verify(c);
    }
    if (expand_cmd->parsed()) return cmd_expand(c);
    if (rates->parsed()) {
      if (c.mode.empty()) throw ConfigError("rates needs a mode: even or odd");
      return cmd_rates(c);
    }
    std::cout << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
