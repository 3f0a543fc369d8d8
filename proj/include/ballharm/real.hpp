#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ballharm/rational.hpp"

namespace ballharm {

// Working precision of the numeric path. Best-approximation errors of entire
// functions reach 1e-42 at degree 40 and are recovered by subtracting partial
// Parseval sums from a norm of order one, so the squared quantities need
// roughly 90 significant digits plus headroom.
inline constexpr unsigned kRealDigits = 110;

using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<kRealDigits,
                                              boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

// acc += a * b with a single rounding.
inline void fma_accumulate(Real& acc, const Real& a, const Real& b) {
  mpfr_fma(acc.backend().data(), a.backend().data(), b.backend().data(),
           acc.backend().data(), MPFR_RNDN);
}

Real to_real(const Rational& q);
Real real_pi();
std::string format_real(const Real& x, int digits = 17);

// Streaming pairwise summation. The reduction tree depends only on the number
// of terms added, so results are reproducible bit for bit.
class PairwiseSum {
 public:
  void add(Real value);
  Real total() const;
  std::size_t count() const { return count_; }

 private:
  struct Partial {
    Real value;
    std::size_t size;
  };
  std::vector<Partial> stack_;
  std::size_t count_ = 0;
};

Real pairwise_sum(std::span<const Real> values);

}  // namespace ballharm
