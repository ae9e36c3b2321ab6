#pragma once

#include <gmpxx.h>

#include <string>

namespace ovs {

// All game values and shares are exact rationals; doubles appear only in
// display formatting.
using Rat = mpq_class;

// Canonicalized num/den construction (mpq_class(n, d) alone does not reduce).
Rat rat(long num, long den = 1);

// Accepts "p/q", plain integers ("-3"), and finite decimals ("0.25").
// Throws std::runtime_error on anything else or on a zero denominator.
Rat parse_rat(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rat& r);

// Decimal rendering rounded half-away-from-zero to `digits` places.
std::string rat_decimal(const Rat& r, int digits);

}  // namespace ovs
