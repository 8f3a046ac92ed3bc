#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace prodlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

/// "num/den" in lowest terms, or "num" when the denominator is 1.
std::string to_decimal(const Rational& value);

double to_double(const Rational& value);

BigInt factorial(unsigned n);
BigInt power(const BigInt& base, unsigned exponent);

}  // namespace prodlab
