#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lllshift {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational rational(std::int64_t num, std::int64_t den = 1);
Rational pow(const Rational& base, std::uint64_t exponent);
BigInt pow2(std::uint64_t exponent);

/// Decimal expansion rounded toward minus infinity (ceil: toward plus infinity)
/// after `digits` fractional digits. Terminating expansions are printed exactly
/// and without trailing zeros.
std::string to_decimal_floor(const Rational& q, unsigned digits = 30);
std::string to_decimal_ceil(const Rational& q, unsigned digits = 30);

/// Accepts "3", "-0.65", "1e-3"-free plain decimals, and "p/q".
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

}  // namespace lllshift
