/* exact rational arithmetic helpers on top of GMP's mpq_class */
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cegio {

using Rat = mpq_class;
using Int = mpz_class;

/* gmpxx has no long long constructors; this codebase targets LP64 */
static_assert(sizeof(long) == sizeof(long long));
inline Int int_of(long long v) { return Int((long)v); }

/* mpq_class's two-argument constructor does not canonicalize; these do.
 * Use them for any numerator/denominator pair that may share a factor. */
inline Rat frac(const Int &num, const Int &den)
{
	Rat q(num, den);
	q.canonicalize();
	return q;
}
inline Rat frac(long num, long den) { return frac(Int(num), Int(den)); }

/* Parse a decimal literal ("12", "0.25", "-3.5") into an exact rational.
 * Throws std::invalid_argument on malformed input. */
Rat rat_from_decimal(std::string_view text);

/* Exact floor/ceil to integers. */
Int floor_rat(const Rat &q);
Int ceil_rat(const Rat &q);

/* Round to the nearest integer, halves toward +infinity. */
Int round_half_up(const Rat &q);

/* The double nearest to q (ties to even); +/-HUGE_VAL on overflow. */
double to_nearest_double(const Rat &q);

/* Exact rational value of a finite double. */
Rat rat_from_double(double d);

/* Round a finite double to the nearest multiple of 10^-12, halves away
 * from zero.  This is the quantization step applied to every
 * transcendental function result. */
Rat quantize_e12(double d);

/* "n" or "n/d" (canonical form). */
std::string rat_string(const Rat &q);

/* Exact decimal rendering to `sig` significant digits (half-to-even),
 * e.g. 1/3 -> "0.333333333333".  Plain notation for moderate exponents,
 * otherwise "d.dd...e+XX". */
std::string rat_decimal(const Rat &q, int sig = 12);

/* True iff q has a finite decimal expansion (denominator 2^a * 5^b);
 * digits_out receives the number of fractional digits needed. */
bool has_finite_decimal(const Rat &q, unsigned long &digits_out);

/* Exact decimal expansion; precondition: has_finite_decimal(q). */
std::string rat_exact_decimal(const Rat &q);

} // namespace cegio
