#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace katz {

/// Exact rational number over the prime field of characteristic zero.
/// Arithmetic results from GMP are always in lowest terms with positive
/// denominator.
using Rational = mpq_class;

/// Always "p/q", integers included ("3/1", "0/1").
std::string to_pq_string(const Rational& q);

/// Accepts "p", "-p", "p/q", "-p/q" with optional surrounding whitespace.
/// Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);

} // namespace katz
