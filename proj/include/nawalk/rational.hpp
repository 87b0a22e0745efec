#pragma once

#include <gmpxx.h>

#include <string>

namespace nawalk {

// Arbitrary-precision exact rationals; GMP keeps arithmetic results canonical.
using Rational = mpq_class;
using Integer = mpz_class;

Rational rational_of(long num, long den = 1);

// Accepts "p/q" or "p" with optional sign.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& value);

inline int sign_of(const Rational& value) { return sgn(value); }

} // namespace nawalk
