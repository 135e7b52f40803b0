#pragma once

// Exact arithmetic primitives shared across the library.  All probabilities
// and polytope volumes are carried as GMP-backed rationals so results are
// independent of evaluation order and thread count.

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace slopeci {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// Parses a plain decimal literal ("0.95", "-1.25", "7", ".5") into an exact
// rational.  Scientific notation is accepted ("2.5e-3").  Throws
// std::invalid_argument on malformed input.
Rational rational_from_decimal(const std::string& text);

// Exact value of the IEEE double (every finite double is a dyadic rational).
Rational rational_from_double(double x);

// Renders `value` as a fixed-point decimal with `places` digits after the
// point, rounding half away from zero.  places == 0 gives an integer string.
std::string decimal_string(const Rational& value, int places);

double to_double(const Rational& value);

}  // namespace slopeci
