#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mixing {

/// Arbitrary-precision rational used by every exact check.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a finite decimal such as "0.25" exactly.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);

/// Converts a double to the rational it represents exactly.
Rational exact_from_double(double x);

}  // namespace mixing
