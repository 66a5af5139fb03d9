#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace maxplus {

// All arithmetic in this library is exact.  Rationals are GMP mpq values,
// always kept canonical (lowest terms, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q", an integer, or a finite decimal ("0.5") into an exact
/// rational.  Scientific notation and malformed input raise ParseError.
Rat parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& value);

/// Exact decimal form when the denominator is of shape 2^a*5^b ("-6.5"),
/// otherwise falls back to "p/q".  Used for graph labels.
std::string decimal_str(const Rat& value);

Int rat_floor(const Rat& value);
Int rat_ceil(const Rat& value);
bool is_integer(const Rat& value);

/// A smallest-denominator rational in the closed interval [lo, hi]
/// (Stern-Brocot / continued-fraction descent; deterministic choice).
/// Requires lo <= hi.
Rat simplest_in_interval(const Rat& lo, const Rat& hi);

} // namespace maxplus
