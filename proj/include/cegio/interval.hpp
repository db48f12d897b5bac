/* outward-rounded double intervals bounding the exact evaluation
 * semantics (including transcendental quantization); used only to prune
 * regions, never to decide values */
#pragma once

#include "cegio/expr.hpp"
#include "cegio/rational.hpp"

#include <span>

namespace cegio {

struct DIv {
	double lo, hi; /* closed; may be +-infinity */
};

struct IvalResult {
	DIv range;
	/* true when some point of the box might make exact evaluation
	 * throw (division by zero, sqrt of a negative, overflow); such a
	 * box must not be pruned or skipped */
	bool may_error;
};

/* Interval certainly containing the exact rational q. */
DIv ival_of_rat(const Rat &q);

/* Hull of two rationals (lo <= hi not required). */
DIv ival_of_range(const Rat &a, const Rat &b);

/* Sound outer bound of { evaluate(e, x) : x_i in boxes[i] }.
 * Guarantee: if may_error is false, every exact value lies in range. */
IvalResult ival_eval(const Expr &e, std::span<const DIv> boxes);

} // namespace cegio
