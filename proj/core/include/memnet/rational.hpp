#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace memnet {

// All network weights, biases and data coordinates are exact rationals.
// GMP's mpq_class keeps values canonical (reduced, positive denominator)
// after every operation, which is exactly the representation contract we
// want; Int is the matching big integer.
using Rational = mpq_class;
using Int = mpz_class;

// Rational upper bounds for pi and 2*pi (355/113 > pi).  Every place that
// the math calls for an irrational constant uses a one-sided rational
// bound so that comparisons stay exact and err toward the safe side.
Rational pi_upper();
Rational two_pi_upper();

// floor/ceil of a rational as a big integer.
Int floor_int(const Rational& q);
Int ceil_int(const Rational& q);

// ceil(a / b) for integers, b > 0.
Int ceil_div(const Int& a, const Int& b);

// Smallest integer r with r*r >= q.  Requires q >= 0.
Int isqrt_ceil(const Rational& q);

// 2^e as a rational; e may be negative.
Rational pow2(long e);

// log2 of a positive rational, as a double (used only for reporting).
double log2_double(const Rational& q);

// Parse "num/den" or "num"; den must be positive after normalization.
// Throws InvalidArgumentError on malformed input.
Rational parse_ratio(const std::string& s);

// Parse a decimal literal like "-12", "3.25" or "1.5e-3" exactly.
Rational parse_decimal(const std::string& s);

// Canonical "num/den" form ("num" when den == 1).
std::string to_ratio_string(const Rational& q);

// Exact conversion of a double (used when rationalizing sampled floats).
Rational from_double(double d);

// Checked narrowing to int64 for floor values and bounds.
std::int64_t to_i64(const Int& v);

}  // namespace memnet
