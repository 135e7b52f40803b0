#include "slopeci/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace slopeci {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational rational_from_decimal(const std::string& text) {
  const char* s = text.c_str();
  std::size_t i = 0;
  auto fail = [&]() { throw std::invalid_argument("not a decimal number: '" + text + "'"); };

  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');

  std::string digits;
  long long scale = 0;  // digits after the decimal point
  bool any = false;
  while (std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (s[i] == '.') {
    ++i;
    while (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++scale;
      any = true;
    }
  }
  if (!any) fail();

  long long exponent = 0;
  if (s[i] == 'e' || s[i] == 'E') {
    ++i;
    bool exp_neg = false;
    if (s[i] == '+' || s[i] == '-') exp_neg = (s[i++] == '-');
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
    while (std::isdigit(static_cast<unsigned char>(s[i]))) {
      exponent = exponent * 10 + (s[i++] - '0');
      if (exponent > 10000) fail();
    }
    if (exp_neg) exponent = -exponent;
  }
  if (s[i] != '\0') fail();

  // Strip leading zeros: the big-integer string constructor would read a
  // leading 0 as an octal prefix.
  std::size_t first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  BigInt numerator(digits);
  if (negative) numerator = -numerator;

  long long net = exponent - scale;
  Rational value(numerator);
  BigInt ten = 10;
  if (net > 0) {
    BigInt p = boost::multiprecision::pow(ten, static_cast<unsigned>(net));
    value *= Rational(p);
  } else if (net < 0) {
    BigInt p = boost::multiprecision::pow(ten, static_cast<unsigned>(-net));
    value /= Rational(p);
  }
  return value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double has no rational value");
  return Rational(x);
}

std::string decimal_string(const Rational& value, int places) {
  if (places < 0) throw std::invalid_argument("decimal_string: places must be >= 0");
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;

  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
  BigInt shifted = num * scale;
  BigInt q = shifted / den;
  BigInt r = shifted % den;
  if (2 * r >= den) ++q;  // half away from zero (sign applied below)

  std::string digits = q.str();
  std::string out;
  if (places == 0) {
    out = digits;
  } else {
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, places + 1 - digits.size(), '0');
    out = digits.substr(0, digits.size() - places) + "." +
          digits.substr(digits.size() - places);
  }
  if (negative && q != 0) out.insert(0, 1, '-');
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace slopeci
