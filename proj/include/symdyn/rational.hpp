#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace symdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p/q" or "p" with optional leading sign; throws ParseError.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0, so integers print as "n/1".
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace symdyn
