#include "cegio/cegio.hpp"

#include <chrono>

namespace cegio {

const char *to_string(SearchStatus s)
{
	switch (s) {
	case SearchStatus::Optimal:
		return "Optimal";
	case SearchStatus::SolverUnknown:
		return "SolverUnknown";
	case SearchStatus::TimedOut:
		return "TimedOut";
	case SearchStatus::BudgetExhausted:
		return "BudgetExhausted";
	}
	return "?";
}

namespace {

enum class Mode { Plain, Sliced, Shrinking };

long long clamp_to(const Int &k, long long lo, long long hi)
{
	if (k < int_of(lo))
		return lo;
	if (k > int_of(hi))
		return hi;
	return (long long)k.get_si();
}

struct driver {
	Mode mode;
	const Expr &f;
	const BoxDomain &box;
	QueryBackend &oracle;
	const SearchOptions &opts;
	SearchResult res;
	std::optional<Candidate> inc;
	std::chrono::steady_clock::time_point t0 =
	    std::chrono::steady_clock::now();

	driver(Mode m, const Expr &f_, const BoxDomain &b, QueryBackend &o,
	       const SearchOptions &op)
	    : mode(m), f(f_), box(b), oracle(o), opts(op)
	{
		int need = free_var_count(f);
		if ((size_t)need > box.dim())
			throw GridError("objective uses x" +
			                std::to_string(need - 1) +
			                " but the domain has only " +
			                std::to_string(box.dim()) + " axes");
		if (opts.eta < 0)
			throw SearchError("eta must be at least 0");
		if (opts.query_budget < 0)
			throw SearchError("query budget must be at least 0");
		if (mode == Mode::Sliced) {
			if (!opts.lower_bound)
				throw SearchError(
				    "the sliced search needs a lower bound");
			if (opts.alpha < 1)
				throw SearchError("alpha must be at least 1");
			if (sgn(opts.stop_gap) < 0)
				throw SearchError("stop gap cannot be negative");
		}
	}

	void finish(SearchStatus st, std::string detail = "")
	{
		res.status = st;
		res.detail = std::move(detail);
		res.best = *inc;
		res.elapsed_sec = std::chrono::duration<double>(
		                      std::chrono::steady_clock::now() - t0)
		                      .count();
	}

	bool spent() const { return res.queries >= opts.query_budget; }

	Candidate initial(const GridSpec &grid) const
	{
		std::vector<Rat> c;
		if (opts.init_point) {
			if (opts.init_point->size() != box.dim())
				throw GridError(
				    "starting point has the wrong dimension");
			if (!box.contains(*opts.init_point))
				throw GridError(
				    "starting point lies outside the domain");
			c = *opts.init_point;
		} else {
			c = box.center();
		}
		std::vector<long long> k(grid.dim());
		for (size_t i = 0; i < grid.dim(); i++)
			k[i] = clamp_to(round_half_up(c[i]),
			                grid.krange[i].first,
			                grid.krange[i].second);
		return make_candidate(f, std::move(k), grid.level);
	}

	/* same point, ten times finer coordinates */
	Candidate rescaled(const Candidate &c, const GridSpec &grid) const
	{
		Candidate out;
		out.level = grid.level;
		out.k.reserve(c.k.size());
		for (long long ki : c.k)
			out.k.push_back(ki * 10);
		if (!grid.in_range(out.k))
			throw SearchError("incumbent fell outside the "
			                  "refined grid");
		out.x = c.x;
		out.value = c.value;
		return out;
	}

	Verdict ask(const Rat &threshold, const std::optional<Rat> &cut,
	            const GridSpec &grid)
	{
		Verdict v = oracle.answer(Query{f, grid, threshold, cut});
		LevelTrace &tr = res.levels.back();
		tr.queries++;
		res.queries++;
		if (v.kind == VerdictKind::Sat) {
			tr.sat++;
			res.sat++;
		} else if (v.kind == VerdictKind::Unsat) {
			tr.unsat++;
			res.unsat++;
		}
		return v;
	}

	/* vet a Sat witness against the query that produced it */
	Candidate accept(const Verdict &v, const GridSpec &grid,
	                 const Rat &threshold, const std::optional<Rat> &cut)
	{
		if (!grid.in_range(v.witness))
			throw BackendError(oracle.name() +
			                   " returned a witness outside the "
			                   "grid");
		Candidate w = make_candidate(f, v.witness, grid.level);
		if (!(w.value < threshold))
			throw BackendError(oracle.name() +
			                   " returned a witness at or above "
			                   "the queried threshold");
		if (cut && w.value < *cut)
			throw BackendError(oracle.name() +
			                   " returned a witness below the "
			                   "queried cut");
		if (mode == Mode::Sliced && w.value < *opts.lower_bound)
			throw SearchError(
			    "objective reaches " + rat_string(w.value) +
			    ", below the stated lower bound " +
			    rat_string(*opts.lower_bound) +
			    "; the bound is wrong");
		res.levels.back().steps.push_back(w);
		return w;
	}

	/* true: level refuted, move on.  false: res is finished. */
	bool descend_plain(const GridSpec &grid)
	{
		for (;;) {
			if (spent()) {
				finish(SearchStatus::BudgetExhausted);
				return false;
			}
			Verdict v = ask(inc->value, std::nullopt, grid);
			switch (v.kind) {
			case VerdictKind::Sat:
				inc = accept(v, grid, inc->value,
				             std::nullopt);
				break;
			case VerdictKind::Unsat:
				return true;
			case VerdictKind::Unknown:
				finish(SearchStatus::SolverUnknown, v.detail);
				return false;
			case VerdictKind::Timeout:
				finish(SearchStatus::TimedOut, v.detail);
				return false;
			}
		}
	}

	bool descend_sliced(const GridSpec &grid, bool &stop_gap_hit)
	{
		const Rat &fm = *opts.lower_bound;
		Rat alpha = frac(opts.alpha, 1);
		for (;;) {
			Rat gap = inc->value - fm;
			if (gap <= opts.stop_gap) {
				stop_gap_hit = true;
				return true;
			}
			Rat delta = gap / alpha;
			bool improved = false;
			for (long long j = 1; j <= opts.alpha && !improved;
			     j++) {
				Rat tj = fm + frac(j, 1) * delta;
				std::optional<Rat> cut;
				if (j >= 2)
					cut = fm + frac(j - 1, 1) * delta;
				if (spent()) {
					finish(SearchStatus::BudgetExhausted);
					return false;
				}
				Verdict v = ask(tj, cut, grid);
				switch (v.kind) {
				case VerdictKind::Sat:
					inc = accept(v, grid, tj, cut);
					improved = true;
					break;
				case VerdictKind::Unsat:
					break;
				case VerdictKind::Unknown:
					finish(SearchStatus::SolverUnknown,
					       v.detail);
					return false;
				case VerdictKind::Timeout:
					finish(SearchStatus::TimedOut,
					       v.detail);
					return false;
				}
			}
			if (!improved)
				return true;
		}
	}

	SearchResult run()
	{
		for (int k = 0; k <= opts.eta; k++) {
			PrecisionLevel level = PrecisionLevel::at(k);
			BoxDomain lbox = box;
			if (mode == Mode::Shrinking && k >= 1)
				lbox = shrink_box(
				    box, inc->x,
				    PrecisionLevel::at(k - 1).pitch());
			GridSpec grid = make_grid(lbox, level);
			if (k == 0)
				inc = initial(grid);
			else
				inc = rescaled(*inc, grid);
			LevelTrace tr;
			tr.level = k;
			tr.box = lbox;
			tr.grid_volume = grid.volume();
			tr.steps.push_back(*inc);
			res.levels.push_back(std::move(tr));
			res.declared_points_total += grid.volume();

			bool stop_gap_hit = false;
			bool done = mode == Mode::Sliced
			                ? descend_sliced(grid, stop_gap_hit)
			                : descend_plain(grid);
			if (!done) /* finish() already ran */
				return std::move(res);
			if (stop_gap_hit)
				break;
		}
		finish(SearchStatus::Optimal);
		return std::move(res);
	}
};

} // namespace

SearchResult cegio_g(const Expr &f, const BoxDomain &box, QueryBackend &oracle,
                     const SearchOptions &opts)
{
	return driver(Mode::Plain, f, box, oracle, opts).run();
}

SearchResult cegio_s(const Expr &f, const BoxDomain &box, QueryBackend &oracle,
                     const SearchOptions &opts)
{
	return driver(Mode::Sliced, f, box, oracle, opts).run();
}

SearchResult cegio_f(const Expr &f, const BoxDomain &box, QueryBackend &oracle,
                     const SearchOptions &opts)
{
	return driver(Mode::Shrinking, f, box, oracle, opts).run();
}

} // namespace cegio
