#include "ballharm/real.hpp"


#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace ballharm {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational");

  auto all_digits = [](std::string_view v) {
    if (v.empty()) return false;
    for (char c : v) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }

  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational: " + s);
    }
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    out = Rational(mpz_class(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal: " + s);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(mpz_class(whole + frac, 10), scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed rational: " + s);
    out = Rational(mpz_class(body, 10));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Real to_real(const Rational& q) {
  Real out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

Real real_pi() {
  static const Real pi = [] {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
  }();
  return pi;
}

std::string format_real(const Real& x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, static_cast<double>(x));
  return buf;
}

void PairwiseSum::add(Real value) {
  std::size_t size = 1;
  while (!stack_.empty() && stack_.back().size == size) {
    value += stack_.back().value;
    stack_.pop_back();
    size *= 2;
  }
  stack_.push_back({std::move(value), size});
  ++count_;
}

Real PairwiseSum::total() const {
  Real sum = 0;
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) sum += it->value;
  return sum;
}

Real pairwise_sum(std::span<const Real> values) {
  PairwiseSum acc;
  for (const Real& v : values) acc.add(v);
  return acc.total();
}

}  // namespace ballharm
