#ifndef NILMOD_RATIONAL_HPP
#define NILMOD_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nilmod {

// Arbitrary precision rational, kept canonical by gmpxx after every
// arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", or "p" when q = 1; the sign lives on the numerator.
std::string to_string(const Rational& q);

/// Parses "p/q" or "p". Throws Error(InvalidInput) on malformed text or a
/// zero denominator. Non-reduced input such as "2/4" is accepted and reduced.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned long k);

}  // namespace nilmod

#endif  // NILMOD_RATIONAL_HPP
