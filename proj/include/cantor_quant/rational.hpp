#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace cantor_quant {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// base^-exponent as an exact fraction.
Rational inverse_power(unsigned base, unsigned exponent);

/// "numerator/denominator" in lowest terms; the denominator is always written,
/// so 2 renders as "2/1".
std::string to_fraction_string(Rational const &value);

/// Accepts "p/q" or "p" with an optional leading '-'. q must be nonzero.
Rational parse_rational(std::string_view text);

/// Exact round-half-even rendering to `significant` digits, laid out like
/// printf("%.*g"): trailing zeros stripped, scientific form when the decimal
/// exponent is < -4 or >= significant.
std::string to_decimal_string(Rational const &value, int significant = 12);

double to_double(Rational const &value);

} // namespace cantor_quant
