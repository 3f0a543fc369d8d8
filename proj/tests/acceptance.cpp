// Acceptance driver: one PASS/FAIL line per criterion.
//   acceptance             run every criterion
//   acceptance --criterion N
// Exit status is 0 iff every criterion that ran passed.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ballharm/rates.hpp"
#include "ballharm/verify.hpp"

using namespace ballharm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string summary;
};

// Folds check results into one line; lists every failing check.
Outcome fold(const std::vector<CheckResult>& results) {
  Outcome o;
  long cases = 0;
  std::ostringstream failures;
  for (const auto& r : results) {
    cases += r.cases;
    if (!r.ok) {
      o.ok = false;
      failures << " | " << r.label << ": " << r.detail;
    }
  }
  std::ostringstream s;
  s << results.size() << " checks, " << cases << " cases" << failures.str();
  o.summary = s.str();
  return o;
}

const std::vector<Rational> kMus = {Rational(0), Rational(1), ratio(1, 2)};

Outcome criterion1() {
  auto t0 = Clock::now();
  Outcome o = fold(check_harmonic_expansions(8, {2, 3, 4, 5}));
  double t = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1fs (budget 120s)", t);
  o.summary += buf;
  o.ok = o.ok && t < 120;
  return o;
}

Outcome criterion2() { return fold(check_appendix(10)); }

Outcome criterion3() { return fold(check_sparsity(8, {2, 3, 4, 5}, kMus)); }

Outcome criterion4() { return fold(check_norms(6, {2, 3, 4}, kMus)); }

Outcome criterion5() { return fold(check_laplacian_actions(8, {2, 3, 4}, kMus)); }

Outcome criterion6() {
  auto r = check_commuting(20, 20240607, {2, 3}, kMus);
  auto maps = check_coefficient_maps(20, {2, 3});
  r.insert(r.end(), maps.begin(), maps.end());
  return fold(r);
}

// Every weight used by the rate experiments (mu + 2s and mu + 2s + 1 up to 5)
// at the rate quadrature degree, plus the low degrees used elsewhere.
Outcome criterion7() {
  std::vector<Rational> mus = {Rational(0), ratio(1, 2), Rational(1), Rational(2),
                               Rational(3), Rational(4), Rational(5)};
  auto r = check_quadrature({2, 3}, mus, {0, 1, 2, 5, 10, 21, 40, 108});
  auto r4 = check_quadrature({4}, kMus, {0, 1, 2, 5, 10, 21, 40});
  r.insert(r.end(), r4.begin(), r4.end());
  return fold(r);
}

Outcome criterion8() {
  auto t0 = Clock::now();
  Outcome o;
  int run = 0;
  int skipped = 0;
  double worst = 0;
  std::string worst_label;
  std::ostringstream failures;
  RateConfig config;  // n in 4..40 step 2, N = 52, degree 108
  for (int d : {2, 3}) {
    RateSession session(config);
    for (const auto& name : registry_names()) {
      TestFunction tf = make_test_function(name, d);
      for (int mu_i : {0, 1}) {
        Rational mu(mu_i);
        auto one = [&](bool odd, int s) {
          if (!tf.unsupported(odd, s, mu).empty()) {
            ++skipped;
            return;
          }
          RateReport r = odd ? session.measure_odd(tf, mu, s) : session.measure_even(tf, mu, s);
          ++run;
          std::ostringstream label;
          label << name << " d=" << d << " mu=" << mu_i << (odd ? " odd" : " even") << " s=" << s;
          double med = r.median_ratio();
          double q = med > 0 ? r.max_ratio() / med : 0;
          if (q > worst) {
            worst = q;
            worst_label = label.str();
          }
          if (!r.bounded()) {
            o.ok = false;
            failures << " | " << label.str() << ": max/median " << q;
          }
        };
        for (int s : {1, 2}) one(false, s);
        for (int s : {0, 1}) one(true, s);
      }
    }
  }
  double t = seconds_since(t0);
  std::ostringstream s;
  s.precision(3);
  s << run << " experiments bounded-checked, " << skipped << " skipped (image outside the weighted L2 space)"
    << ", worst max/median " << worst << " (" << worst_label << "), " << std::fixed << std::setprecision(1) << t
    << "s (budget 600s)" << failures.str();
  o.ok = o.ok && t < 600;
  o.summary = s.str();
  return o;
}

Outcome criterion9() { return fold(check_worked_values()); }

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion must be 1.." << criteria.size() << "\n";
    return 2;
  }
  bool all_ok = true;
  for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k << ": " << o.summary << std::endl;
    all_ok = all_ok && o.ok;
  }
  return all_ok ? 0 : 1;
}
