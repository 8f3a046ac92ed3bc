#include "prodlab/bigint.hpp"

#include <cmath>

namespace prodlab {

std::string to_decimal(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) {
  // Convert through long double logs only when the parts overflow double.
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  const double n = num.convert_to<double>();
  const double d = den.convert_to<double>();
  if (std::isfinite(n) && std::isfinite(d)) return n / d;
  return value.convert_to<double>();
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt power(const BigInt& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

}  // namespace prodlab
