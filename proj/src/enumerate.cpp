#include "cegio/backend.hpp"
#include "cegio/interval.hpp"

#include <cmath>
#include <optional>

namespace cegio {

/* Both entry points scan the grid in lexicographic coordinate order by
 * recursively bisecting the first still-unfixed axis, taking the lower
 * half first (which preserves the scan order).  Sub-boxes whose
 * interval bound proves them irrelevant are skipped wholesale, but only
 * when the bound also certifies that exact evaluation cannot throw
 * anywhere inside, so evaluation errors surface at exactly the point
 * where a plain pointwise scan would hit them. */

namespace {

/* every value of the box is >= lo; certainly at or above t? */
bool all_at_or_above(double lo, const Rat &t)
{
	return std::isfinite(lo) && rat_from_double(lo) >= t;
}

/* every value of the box is <= hi; certainly below t? */
bool all_below(double hi, const Rat &t)
{
	return std::isfinite(hi) && rat_from_double(hi) < t;
}

void check_cap(const GridSpec &grid, const EnumOptions &opts)
{
	Int vol = grid.volume();
	if (vol > int_of(opts.cap))
		throw BackendError("query covers " + vol.get_str() +
		                   " grid points, over the enumeration cap "
		                   "of " +
		                   std::to_string(opts.cap));
}

struct scan_state {
	const Expr &f;
	const GridSpec &grid;
	const EnumOptions &opts;
	/* current sub-box, mutated in place during recursion */
	std::vector<std::pair<long long, long long>> range;
	std::vector<DIv> boxes;

	scan_state(const Expr &f_, const GridSpec &g, const EnumOptions &o)
	    : f(f_), grid(g), opts(o), range(g.krange)
	{
		boxes.reserve(range.size());
		for (const auto &[lo, hi] : range)
			boxes.push_back(axis_box(lo, hi));
	}

	DIv axis_box(long long lo, long long hi) const
	{
		return ival_of_range(frac(int_of(lo), grid.level.p),
		                     frac(int_of(hi), grid.level.p));
	}

	/* overflow-safe midpoint, lo <= mid < hi */
	static long long mid_of(long long lo, long long hi)
	{
		unsigned long long w = (unsigned long long)hi -
		                       (unsigned long long)lo;
		return lo + (long long)(w / 2);
	}

	std::vector<long long> corner() const
	{
		std::vector<long long> k;
		k.reserve(range.size());
		for (const auto &[lo, hi] : range)
			k.push_back(lo);
		return k;
	}

	/* run body() on both halves of axis `from`; body returns true to
	 * stop the scan early */
	template <class Body> bool split(size_t from, Body &&body)
	{
		auto [lo, hi] = range[from];
		DIv saved = boxes[from];
		long long mid = mid_of(lo, hi);
		range[from] = {lo, mid};
		boxes[from] = axis_box(lo, mid);
		if (body(from))
			return true;
		range[from] = {mid + 1, hi};
		boxes[from] = axis_box(mid + 1, hi);
		if (body(from))
			return true;
		range[from] = {lo, hi};
		boxes[from] = saved;
		return false;
	}
};

struct witness_scan : scan_state {
	const Query &q;
	std::vector<long long> found;

	witness_scan(const Query &q_, const EnumOptions &o)
	    : scan_state(q_.objective, q_.grid, o), q(q_)
	{
	}

	bool admits(const Rat &v) const
	{
		return v < q.threshold &&
		       (!q.lower_cut || v >= *q.lower_cut);
	}

	bool scan(size_t from)
	{
		while (from < range.size() &&
		       range[from].first == range[from].second)
			from++;
		if (from == range.size()) {
			std::vector<long long> k = corner();
			Rat v = evaluate(f, to_point(k, grid.level));
			if (!admits(v))
				return false;
			found = std::move(k);
			return true;
		}
		if (opts.prune) {
			IvalResult iv = ival_eval(f, boxes);
			if (!iv.may_error) {
				if (all_at_or_above(iv.range.lo, q.threshold))
					return false;
				if (q.lower_cut &&
				    all_below(iv.range.hi, *q.lower_cut))
					return false;
				if (all_below(iv.range.hi, q.threshold) &&
				    (!q.lower_cut ||
				     all_at_or_above(iv.range.lo,
				                     *q.lower_cut))) {
					/* the whole box satisfies; its
					 * lexicographic corner is the first
					 * witness in this subtree */
					found = corner();
					return true;
				}
			}
		}
		return split(from, [&](size_t i) { return scan(i); });
	}
};

struct min_scan : scan_state {
	std::optional<Candidate> best;

	using scan_state::scan_state;

	void scan(size_t from)
	{
		while (from < range.size() &&
		       range[from].first == range[from].second)
			from++;
		if (from == range.size()) {
			std::vector<long long> k = corner();
			std::vector<Rat> x = to_point(k, grid.level);
			Rat v = evaluate(f, x);
			if (!best || v < best->value)
				best = Candidate{std::move(k), grid.level,
				                 std::move(x), std::move(v)};
			return;
		}
		if (opts.prune && best) {
			IvalResult iv = ival_eval(f, boxes);
			/* a tied point here would be lexicographically later
			 * than the incumbent, so >= suffices */
			if (!iv.may_error &&
			    all_at_or_above(iv.range.lo, best->value))
				return;
		}
		split(from, [&](size_t i) {
			scan(i);
			return false;
		});
	}
};

} // namespace

Verdict enum_check(const Query &q, const EnumOptions &opts)
{
	validate_query(q);
	check_cap(q.grid, opts);
	witness_scan s(q, opts);
	if (s.scan(0))
		return {VerdictKind::Sat, std::move(s.found), ""};
	return {VerdictKind::Unsat, {}, ""};
}

Candidate enumerate_min(const Expr &f, const GridSpec &grid,
                        const EnumOptions &opts)
{
	for (int v : free_vars(f))
		if ((size_t)v >= grid.dim())
			throw GridError("objective uses x" + std::to_string(v) +
			                " but the grid has " +
			                std::to_string(grid.dim()) + " axes");
	check_cap(grid, opts);
	min_scan s(f, grid, opts);
	s.scan(0);
	return std::move(*s.best);
}

} // namespace cegio
