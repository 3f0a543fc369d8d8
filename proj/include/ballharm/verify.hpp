#pragma once

#include <string>
#include <vector>

#include "ballharm/rational.hpp"

namespace ballharm {

struct CheckResult {
  std::string label;
  bool ok = true;
  long cases = 0;
  std::string detail;  // first failure, or a short summary
};

struct VerifyOptions {
  std::vector<int> dims;       // empty: each check's default set
  std::vector<Rational> mus;   // empty: {0, 1, 1/2}
  unsigned seed = 20240607;
  int fixtures = 20;
};

struct SuiteInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> checks;
};

std::vector<SuiteInfo> verify_suites();
// Runs a suite by name ("identities", "orthogonality", "appendix",
// "commuting", "all"); throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& options);

// Individual checks, shared by the suites and the acceptance driver.
std::vector<CheckResult> check_harmonic_expansions(int max_degree, const std::vector<int>& dims);
std::vector<CheckResult> check_appendix(int max_degree);
std::vector<CheckResult> check_sparsity(int max_degree, const std::vector<int>& dims, const std::vector<Rational>& mus);
std::vector<CheckResult> check_norms(int max_degree, const std::vector<int>& dims, const std::vector<Rational>& mus);
std::vector<CheckResult> check_laplacian_actions(int max_degree, const std::vector<int>& dims,
                                                 const std::vector<Rational>& mus);
std::vector<CheckResult> check_commuting(int fixtures, unsigned seed, const std::vector<int>& dims,
                                         const std::vector<Rational>& mus);
std::vector<CheckResult> check_coefficient_maps(int N, const std::vector<int>& dims);
std::vector<CheckResult> check_quadrature(const std::vector<int>& dims, const std::vector<Rational>& mus,
                                          const std::vector<int>& degrees);
std::vector<CheckResult> check_numeric_orthonormality(const std::vector<int>& dims, const std::vector<Rational>& mus);
std::vector<CheckResult> check_worked_values();

}  // namespace ballharm
