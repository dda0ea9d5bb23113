#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace phragmen {

// Arbitrary-precision rational. Always kept canonical (reduced, positive
// denominator) by the helpers below.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);

// Accepts "3", "-2/7", "0.9", "1e-3" and "-0.125". Decimal strings are
// converted exactly (0.9 -> 9/10).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

// b^e for integer e (negative allowed when b != 0).
Rational pow_int(const Rational& base, long exponent);

// b^(p/q) when the result is rational, std::nullopt otherwise. Requires b > 0.
std::optional<Rational> pow_rational(const Rational& base, const Rational& exponent);

BigInt floor(const Rational& r);
long floor_to_long(const Rational& r);

bool is_integer(const Rational& r);

}  // namespace phragmen
