#include "cegio/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cegio {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();
/* absolute slack covering transcendental quantization (5e-13) plus
 * libm rounding at double what's needed */
constexpr double TRANS_PAD = 2e-12;

double dn(double x)
{
	if (std::isnan(x))
		return -INF;
	return x == -INF ? x : std::nextafter(x, -INF);
}

double up(double x)
{
	if (std::isnan(x))
		return INF;
	return x == INF ? x : std::nextafter(x, INF);
}

DIv widen(DIv v) { return {dn(v.lo), up(v.hi)}; }

DIv hull(DIv a, DIv b)
{
	return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

DIv iadd(DIv a, DIv b) { return widen({a.lo + b.lo, a.hi + b.hi}); }

DIv isub(DIv a, DIv b) { return widen({a.lo - b.hi, a.hi - b.lo}); }

DIv ineg(DIv a) { return {-a.hi, -a.lo}; }

double mul_lo(double x, double y)
{
	double r = x * y;
	if (std::isnan(r))
		return -INF; /* 0 * inf: conservative */
	return r;
}

DIv imul(DIv a, DIv b)
{
	double c[4] = {mul_lo(a.lo, b.lo), mul_lo(a.lo, b.hi),
	               mul_lo(a.hi, b.lo), mul_lo(a.hi, b.hi)};
	double lo = c[0], hi = c[0];
	for (double v : c) {
		lo = std::min(lo, v);
		hi = std::max(hi, v);
	}
	if (std::isnan(hi))
		hi = INF;
	return widen({lo, hi});
}

DIv idiv(DIv a, DIv b)
{
	/* caller has excluded 0 from b */
	double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
	double lo = c[0], hi = c[0];
	for (double v : c) {
		if (std::isnan(v))
			return {-INF, INF};
		lo = std::min(lo, v);
		hi = std::max(hi, v);
	}
	return widen({lo, hi});
}

/* x^k with directed rounding via repeated multiplication */
double pow_dir(double x, long k, bool toward_up)
{
	double r = 1.0;
	for (long i = 0; i < k; i++) {
		r *= x;
		if (!std::isfinite(r))
			return r;
		r = toward_up ? std::nextafter(r, INF) : std::nextafter(r, -INF);
	}
	return r;
}

DIv ipow(DIv a, long k)
{
	if (k == 0)
		return {1.0, 1.0};
	if (k == 1)
		return a;
	if (k % 2 == 1) {
		/* odd: monotone */
		return {pow_dir(a.lo, k, false), pow_dir(a.hi, k, true)};
	}
	/* even: minimum at the point closest to 0 */
	double m = std::max(std::abs(a.lo), std::abs(a.hi));
	double hi = pow_dir(m, k, true);
	double lo;
	if (a.lo <= 0.0 && a.hi >= 0.0) {
		lo = 0.0;
	} else {
		double s = std::min(std::abs(a.lo), std::abs(a.hi));
		lo = pow_dir(s, k, false);
	}
	return {lo, hi};
}

DIv pad_abs(DIv v, double s) { return {v.lo - s, v.hi + s}; }

/* range of sin over [a.lo, a.hi], padded for libm error and
 * quantization; the argument is widened first so that nearest-double
 * conversion of exact arguments stays inside */
DIv isin(DIv a)
{
	a = widen(a);
	if (!std::isfinite(a.lo) || !std::isfinite(a.hi) ||
	    a.hi - a.lo >= 2 * M_PI)
		return {-1.0 - TRANS_PAD, 1.0 + TRANS_PAD};
	double slo = std::sin(a.lo), shi = std::sin(a.hi);
	double lo = std::min(slo, shi), hi = std::max(slo, shi);
	/* include +-1 when an extremum pi/2 + k*pi may fall inside the
	 * argument range (generous margin keeps this sound) */
	const double margin = 1e-9 * (1.0 + std::max(std::abs(a.lo),
	                                             std::abs(a.hi)));
	double n1 = std::floor((a.hi - M_PI_2) / (2 * M_PI));
	if (M_PI_2 + 2 * M_PI * n1 >= a.lo - margin)
		hi = 1.0;
	double n2 = std::floor((a.hi + M_PI_2) / (2 * M_PI));
	if (-M_PI_2 + 2 * M_PI * n2 >= a.lo - margin)
		lo = -1.0;
	lo = std::max(lo - TRANS_PAD - margin, -1.0 - TRANS_PAD);
	hi = std::min(hi + TRANS_PAD + margin, 1.0 + TRANS_PAD);
	return {lo, hi};
}

DIv icos(DIv a)
{
	/* cos(x) = sin(x + pi/2); shift with one ulp of slack, absorbed by
	 * isin's own margins */
	return isin(iadd(a, {M_PI_2, M_PI_2}));
}

DIv isqrt(DIv a)
{
	double lo = a.lo < 0 ? 0.0 : a.lo;
	double l = std::sqrt(lo), h = std::sqrt(a.hi < 0 ? 0.0 : a.hi);
	return pad_abs(widen({l, h}), TRANS_PAD);
}

DIv iexp(DIv a)
{
	double l = std::exp(a.lo), h = std::exp(a.hi);
	/* exp is within 1 ulp; two nextafters plus absolute pad */
	DIv r = widen(widen({l, h}));
	r = pad_abs(r, TRANS_PAD);
	if (r.lo < 0)
		r.lo = 0;
	return r;
}

} // namespace

DIv ival_of_rat(const Rat &q)
{
	double d = to_nearest_double(q);
	return {dn(d), up(d)};
}

DIv ival_of_range(const Rat &a, const Rat &b)
{
	return hull(ival_of_rat(a), ival_of_rat(b));
}

IvalResult ival_eval(const Expr &e, std::span<const DIv> boxes)
{
	switch (e.kind()) {
	case ExprKind::Const:
		return {ival_of_rat(e.value()), false};
	case ExprKind::Pi:
		return {ival_of_rat(quantized_pi()), false};
	case ExprKind::Var: {
		size_t i = (size_t)e.var_index();
		if (i >= boxes.size())
			return {{-INF, INF}, true}; /* unbound: exact eval throws */
		return {boxes[i], false};
	}
	case ExprKind::Neg: {
		IvalResult a = ival_eval(e.child(0), boxes);
		return {ineg(a.range), a.may_error};
	}
	case ExprKind::Add: {
		IvalResult a = ival_eval(e.child(0), boxes);
		IvalResult b = ival_eval(e.child(1), boxes);
		return {iadd(a.range, b.range), a.may_error || b.may_error};
	}
	case ExprKind::Sub: {
		IvalResult a = ival_eval(e.child(0), boxes);
		IvalResult b = ival_eval(e.child(1), boxes);
		return {isub(a.range, b.range), a.may_error || b.may_error};
	}
	case ExprKind::Mul: {
		IvalResult a = ival_eval(e.child(0), boxes);
		IvalResult b = ival_eval(e.child(1), boxes);
		return {imul(a.range, b.range), a.may_error || b.may_error};
	}
	case ExprKind::Div: {
		IvalResult a = ival_eval(e.child(0), boxes);
		IvalResult b = ival_eval(e.child(1), boxes);
		bool err = a.may_error || b.may_error;
		if (b.range.lo <= 0.0 && b.range.hi >= 0.0)
			return {{-INF, INF}, true}; /* denominator may vanish */
		return {idiv(a.range, b.range), err};
	}
	case ExprKind::PowInt: {
		IvalResult a = ival_eval(e.child(0), boxes);
		return {ipow(a.range, e.exponent()), a.may_error};
	}
	case ExprKind::Abs: {
		IvalResult a = ival_eval(e.child(0), boxes);
		DIv r;
		if (a.range.lo >= 0)
			r = a.range;
		else if (a.range.hi <= 0)
			r = ineg(a.range);
		else
			r = {0.0, std::max(-a.range.lo, a.range.hi)};
		return {r, a.may_error};
	}
	case ExprKind::Floor: {
		IvalResult a = ival_eval(e.child(0), boxes);
		return {{std::floor(a.range.lo), std::floor(a.range.hi)},
		        a.may_error};
	}
	case ExprKind::Sqrt: {
		IvalResult a = ival_eval(e.child(0), boxes);
		bool err = a.may_error || a.range.lo < 0;
		return {isqrt(a.range), err};
	}
	case ExprKind::Sin: {
		IvalResult a = ival_eval(e.child(0), boxes);
		return {isin(a.range), a.may_error};
	}
	case ExprKind::Cos: {
		IvalResult a = ival_eval(e.child(0), boxes);
		return {icos(a.range), a.may_error};
	}
	case ExprKind::Exp: {
		IvalResult a = ival_eval(e.child(0), boxes);
		/* exact semantics reject results beyond double range */
		bool err = a.may_error || a.range.hi > 709.0;
		return {iexp(a.range), err};
	}
	}
	return {{-INF, INF}, true};
}

} // namespace cegio
