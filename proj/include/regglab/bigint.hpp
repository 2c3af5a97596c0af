#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace regglab {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigCount factorial(unsigned n) {
  BigCount r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

/// (n-1)!! for even n: the number of perfect matchings of K_n.
inline BigCount matchings_of_complete(unsigned n) {
  if (n % 2) return 0;
  BigCount r = 1;
  for (unsigned k = n - 1; k > 1; k -= 2) r *= k;
  return r;
}

inline Rational make_rational(const BigCount& num, const BigCount& den) { return Rational(num, den); }

inline std::string to_string(const BigCount& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace regglab
