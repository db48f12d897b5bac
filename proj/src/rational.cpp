#include "cegio/rational.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace cegio {

Rat rat_from_decimal(std::string_view text)
{
	size_t i = 0, n = text.size();
	bool neg = false;
	if (i < n && (text[i] == '+' || text[i] == '-')) {
		neg = text[i] == '-';
		i++;
	}
	size_t int_begin = i;
	while (i < n && isdigit((unsigned char)text[i]))
		i++;
	size_t int_len = i - int_begin;
	std::string digits(text.substr(int_begin, int_len));
	unsigned long frac_len = 0;
	bool saw_dot = false;
	if (i < n && text[i] == '.') {
		saw_dot = true;
		i++;
		size_t frac_begin = i;
		while (i < n && isdigit((unsigned char)text[i]))
			i++;
		frac_len = i - frac_begin;
		digits += text.substr(frac_begin, frac_len);
	}
	if (i != n || int_len == 0 || (saw_dot && frac_len == 0))
		throw std::invalid_argument("malformed decimal literal: '" +
		                            std::string(text) + "'");
	Int num(digits, 10);
	Int den;
	mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
	Rat q(num, den);
	q.canonicalize();
	return neg ? Rat(-q) : q;
}

Int floor_rat(const Rat &q)
{
	Int r;
	mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return r;
}

Int ceil_rat(const Rat &q)
{
	Int r;
	mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return r;
}

Int round_half_up(const Rat &q)
{
	return floor_rat(q + Rat(1, 2));
}

double to_nearest_double(const Rat &q)
{
	if (sgn(q) == 0)
		return 0.0;
	/* mpq_get_d truncates toward zero; the nearest double is that value
	 * or one of its neighbours.  Compare the three exactly. */
	double d0 = mpq_get_d(q.get_mpq_t());
	/* overflow threshold: halfway between DBL_MAX and the next
	 * (non-representable) binade step */
	static const Rat huge = [] {
		Int t;
		mpz_ui_pow_ui(t.get_mpz_t(), 2, 1024);
		Int u;
		mpz_ui_pow_ui(u.get_mpz_t(), 2, 970);
		return Rat(t - u);
	}();
	if (q >= huge)
		return std::numeric_limits<double>::infinity();
	if (q <= -huge)
		return -std::numeric_limits<double>::infinity();
	if (!std::isfinite(d0))
		d0 = d0 > 0 ? std::numeric_limits<double>::max()
		            : -std::numeric_limits<double>::max();
	double cand[3] = {
	    d0,
	    std::nextafter(d0, std::numeric_limits<double>::infinity()),
	    std::nextafter(d0, -std::numeric_limits<double>::infinity()),
	};
	double best = d0;
	Rat best_err;
	bool have = false;
	for (double c : cand) {
		if (!std::isfinite(c))
			continue;
		Rat err = abs(q - rat_from_double(c));
		if (!have || err < best_err ||
		    (err == best_err &&
		     (std::bit_cast<uint64_t>(c) & 1) == 0)) {
			have = true;
			best_err = err;
			best = c;
		}
	}
	return best;
}

Rat rat_from_double(double d)
{
	if (!std::isfinite(d))
		throw std::invalid_argument("rat_from_double: non-finite input");
	Rat q;
	mpq_set_d(q.get_mpq_t(), d);
	return q;
}

Rat quantize_e12(double d)
{
	if (!std::isfinite(d))
		throw std::invalid_argument("quantize_e12: non-finite input");
	static const Int e12 = [] {
		Int t;
		mpz_ui_pow_ui(t.get_mpz_t(), 10, 12);
		return t;
	}();
	Rat w = rat_from_double(d) * e12;
	/* round half away from zero */
	Int num = abs(Int(w.get_num()));
	const Int &den = w.get_den();
	Int n, rem;
	mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
	            den.get_mpz_t());
	if (rem * 2 >= den)
		n += 1;
	if (sgn(w) < 0)
		n = -n;
	Rat q(n, e12);
	q.canonicalize();
	return q;
}

std::string rat_string(const Rat &q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool has_finite_decimal(const Rat &q, unsigned long &digits_out)
{
	Int den = q.get_den();
	unsigned long twos = 0, fives = 0;
	while (mpz_even_p(den.get_mpz_t())) {
		mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), 1);
		twos++;
	}
	while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
		mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
		fives++;
	}
	digits_out = std::max(twos, fives);
	return den == 1;
}

static std::string insert_point(const std::string &digits, unsigned long frac)
{
	if (frac == 0)
		return digits;
	std::string s = digits;
	if (s.size() <= frac)
		s.insert(0, frac - s.size() + 1, '0');
	s.insert(s.size() - frac, ".");
	return s;
}

std::string rat_exact_decimal(const Rat &q)
{
	unsigned long frac;
	if (!has_finite_decimal(q, frac))
		throw std::invalid_argument("rat_exact_decimal: not a finite decimal");
	Int scale;
	mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac);
	Int scaled = Int(q.get_num()) * scale / q.get_den();
	std::string sign = sgn(scaled) < 0 ? "-" : "";
	Int a = abs(scaled);
	return sign + insert_point(a.get_str(), frac);
}

std::string rat_decimal(const Rat &q, int sig)
{
	if (sig < 1)
		throw std::invalid_argument("rat_decimal: sig must be >= 1");
	if (sgn(q) == 0)
		return "0";
	Rat a = abs(q);
	/* decimal exponent e with 10^e <= a < 10^(e+1) */
	long e = (long)mpz_sizeinbase(a.get_num_mpz_t(), 10) -
	         (long)mpz_sizeinbase(a.get_den_mpz_t(), 10);
	auto pow10 = [](long k) {
		Int t;
		mpz_ui_pow_ui(t.get_mpz_t(), 10, (unsigned long)(k < 0 ? -k : k));
		return k < 0 ? Rat(1, t) : Rat(t);
	};
	while (a < pow10(e))
		e--;
	while (a >= pow10(e + 1))
		e++;
	/* scale to sig digits and round half-to-even */
	Rat scaled = a * pow10(sig - 1 - e);
	Int lo = floor_rat(scaled);
	Rat rem = scaled - lo;
	Int m = lo;
	if (rem > Rat(1, 2) ||
	    (rem == Rat(1, 2) && mpz_odd_p(lo.get_mpz_t())))
		m += 1;
	Int limit;
	mpz_ui_pow_ui(limit.get_mpz_t(), 10, sig);
	if (m == limit) {
		mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 10);
		e++;
	}
	std::string digits = m.get_str();
	std::string sign = sgn(q) < 0 ? "-" : "";
	if (e >= -5 && e <= 15) {
		if (e >= sig - 1)
			return sign + digits + std::string(e - (sig - 1), '0');
		if (e >= 0)
			return sign + insert_point(digits, sig - 1 - e);
		return sign + "0." + std::string(-e - 1, '0') + digits;
	}
	std::string mant = digits.substr(0, 1) + "." + digits.substr(1);
	return sign + mant + (e < 0 ? "e-" : "e+") +
	       (std::abs(e) < 10 ? "0" : "") + std::to_string(std::abs(e));
}

} // namespace cegio
