#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace kacmod {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

double to_double(const Rational& r);
bool is_integer(const Rational& r);
// Requires is_integer(r) and a value that fits.
std::int64_t to_int64(const Rational& r);
// Fractional part in [0, 1).
Rational frac(const Rational& r);
Rational floor_r(const Rational& r);

}  // namespace kacmod
