#ifndef SATO_RATIONAL_HPP
#define SATO_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace sato {

using Rational = mpq_class;
using Integer = mpz_class;

/// Generalized binomial coefficient C(n, i) = n(n-1)...(n-i+1)/i! for any
/// integer n and i >= 0. Negative n gives the signed values used by the
/// Leibniz rule for negative powers of the derivation.
Integer binomial(long n, long i);

Rational factorial(long n);

/// Parses "p", "-p", "p/q" into a reduced fraction. Returns nullopt on
/// malformed input or zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

/// "p" when the denominator is one, otherwise "p/q".
std::string to_string(const Rational& q);

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);

}  // namespace sato

#endif  // SATO_RATIONAL_HPP
