#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace avc {

using Rational = boost::multiprecision::cpp_rational;

// Parses `[-]digits[.digits]`. Returns nullopt on anything else.
std::optional<Rational> parse_decimal(std::string_view text);

// True when the value has a terminating decimal expansion.
bool is_finite_decimal(const Rational& value);

// Exact decimal rendering; integers print without a fractional part.
// Values without a terminating expansion print as `p/q`.
std::string to_decimal_string(const Rational& value);

// Decimal rendering that always carries a fractional digit ("3.0"), as
// SMT-LIB wants for Real literals.
std::string to_real_literal(const Rational& value);

// Round half away from zero to `digits` fractional digits.
Rational round_half_away(const Rational& value, int digits);

}  // namespace avc
