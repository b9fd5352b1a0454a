#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dac {

// Exact rational numbers (GMP). All polynomial work in the exact engine and
// the certificates is done in this type.
using Rational = mpq_class;

// Accepts "a/b", integers and finite decimals ("0.125", "-3.5e-2" is not
// accepted). Decimals are converted exactly with a power-of-ten denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

Rational pow(const Rational& base, unsigned long exponent);

// num/den in canonical form. mpq_class(num, den) does not reduce, and GMP
// arithmetic on unreduced values is unreliable.
Rational ratio(long num, long den);

// 1/2, used everywhere as the threshold level.
inline Rational half() { return Rational(1, 2); }

}  // namespace dac
