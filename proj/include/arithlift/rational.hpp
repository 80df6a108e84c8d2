#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace arithlift {

using Int = mpz_class;
using Rat = mpq_class;

// Accepts "p/q", plain integers and finite decimals such as "-1.25" (converted exactly).
Rat parse_rational(const std::string& text);
std::string to_string(const Rat& x);

Rat make_rat(long num, long den = 1);
bool is_integer(const Rat& x);
Int floor_rat(const Rat& x);
// x mod 1, normalized into [0, 1).
Rat frac(const Rat& x);
// p-adic valuation of a nonzero rational.
long valuation(const Rat& x, long p);
long valuation(const Int& x, long p);
double to_double(const Rat& x);
long double to_long_double(const Rat& x);
long to_long(const Int& x);
// Rational power p^e for integer e (negative allowed).
Rat rat_pow(const Rat& base, long e);

}  // namespace arithlift
