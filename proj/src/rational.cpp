#include "cantor_quant/rational.hpp"

#include "cantor_quant/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace cantor_quant {

namespace {

Integer power_of_ten(unsigned exponent)
{
  Integer result = 1;
  for (unsigned i = 0; i < exponent; ++i) { result *= 10; }
  return result;
}

bool all_digits(std::string_view text)
{
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c)) != 0;
         });
}

// floor(log10(value)) for value > 0.
int decimal_exponent(Rational const &value)
{
  auto const num_digits = static_cast<int>(numerator(value).str().size());
  auto const den_digits = static_cast<int>(denominator(value).str().size());
  int exponent = num_digits - den_digits;
  auto scaled = [&](int e) {
    return e >= 0 ? Rational(power_of_ten(static_cast<unsigned>(e)))
                  : Rational(Integer(1), power_of_ten(static_cast<unsigned>(-e)));
  };
  while (value < scaled(exponent)) { --exponent; }
  while (value >= scaled(exponent + 1)) { ++exponent; }
  return exponent;
}

} // namespace

Rational inverse_power(unsigned base, unsigned exponent)
{
  Integer denom = 1;
  for (unsigned i = 0; i < exponent; ++i) { denom *= base; }
  return Rational(Integer(1), denom);
}

std::string to_fraction_string(Rational const &value)
{
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_rational(std::string_view text)
{
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto const slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw ParseError("malformed rational '" + std::string(text) + "', expected p/q");
  }
  Integer num{std::string(num_text)};
  Integer den{std::string(den_text)};
  if (den == 0) { throw ParseError("zero denominator in '" + std::string(text) + "'"); }
  if (negative) { num = -num; }
  return Rational(num, den);
}

std::string to_decimal_string(Rational const &value, int significant)
{
  if (significant < 1) { throw DomainError("significant digits must be positive"); }
  if (value == 0) { return "0"; }

  Rational const magnitude = abs(value);
  int exponent = decimal_exponent(magnitude);
  int const shift = significant - 1 - exponent;
  Rational scaled = magnitude;
  if (shift >= 0) {
    scaled *= power_of_ten(static_cast<unsigned>(shift));
  } else {
    scaled /= power_of_ten(static_cast<unsigned>(-shift));
  }

  Integer digits = numerator(scaled) / denominator(scaled);
  Integer const twice_rem = 2 * (numerator(scaled) - digits * denominator(scaled));
  if (twice_rem > denominator(scaled) || (twice_rem == denominator(scaled) && digits % 2 == 1)) {
    ++digits;
  }
  if (digits == power_of_ten(static_cast<unsigned>(significant))) {
    digits /= 10;
    ++exponent;
  }

  std::string mantissa = digits.str();
  std::string out = value < 0 ? "-" : "";
  if (exponent < -4 || exponent >= significant) {
    std::string frac = mantissa.substr(1);
    while (!frac.empty() && frac.back() == '0') { frac.pop_back(); }
    out += mantissa.substr(0, 1);
    if (!frac.empty()) { out += "." + frac; }
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "e%c%02d", exponent < 0 ? '-' : '+', std::abs(exponent));
    out += buffer;
    return out;
  }

  std::string int_part;
  std::string frac;
  if (exponent >= 0) {
    int_part = mantissa.substr(0, static_cast<std::size_t>(exponent) + 1);
    frac = mantissa.substr(static_cast<std::size_t>(exponent) + 1);
  } else {
    int_part = "0";
    frac = std::string(static_cast<std::size_t>(-exponent - 1), '0') + mantissa;
  }
  while (!frac.empty() && frac.back() == '0') { frac.pop_back(); }
  out += int_part;
  if (!frac.empty()) { out += "." + frac; }
  return out;
}

double to_double(Rational const &value) { return value.convert_to<double>(); }

} // namespace cantor_quant
