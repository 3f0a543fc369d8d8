#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ballharm {

using Rational = mpq_class;

// Accepts "3", "-1/2" and terminating decimals such as "0.25" or "-1.5".
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// Rising factorial (a)_n.
template <class T>
T pochhammer(const T& a, int n) {
  T out(1);
  for (int i = 0; i < n; ++i) {
    T term = a + T(i);
    out *= term;
  }
  return out;
}

inline Rational factorial(int n) {
  Rational out(1);
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

// a / b in canonical form. Two-argument mpq_class construction does not reduce.
inline Rational ratio(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline Rational half(long k) { return ratio(k, 2); }

}  // namespace ballharm
