#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nnld {

using BigInt = boost::multiprecision::cpp_int;

/// Exact signed rational with a positive denominator, always reduced.
using Rational = boost::multiprecision::cpp_rational;

/// "num/den" (denominator always printed, "0/1" for zero).
std::string to_string(const Rational& r);

/// Parses "num/den" or an integer. Throws nnld::Error(parse) on bad input.
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

} // namespace nnld
