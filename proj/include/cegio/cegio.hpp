/* counterexample-driven descent over precision ladders */
#pragma once

#include "cegio/backend.hpp"

#include <optional>

namespace cegio {

struct SearchError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

enum class SearchStatus { Optimal, SolverUnknown, TimedOut, BudgetExhausted };

const char *to_string(SearchStatus s);

struct SearchOptions {
	int eta = 2;            /* finest level; pitch there is 10^-eta */
	long long query_budget = 1'000'000;
	/* starting point; defaults to the domain's center.  Snapped onto
	 * the coarsest grid (half rounds up) and clamped into it. */
	std::optional<std::vector<Rat>> init_point;
	/* sliced search only */
	std::optional<Rat> lower_bound;
	long long alpha = 10;           /* slices per sweep */
	Rat stop_gap = frac(1, 100000); /* stop once incumbent is this
	                                   close to the lower bound */
};

struct LevelTrace {
	int level = 0;
	BoxDomain box; /* region searched at this level */
	Int grid_volume = 0;
	/* the incumbent on entering the level, then every improvement */
	std::vector<Candidate> steps;
	long long queries = 0, sat = 0, unsat = 0;
};

struct SearchResult {
	Candidate best;
	SearchStatus status = SearchStatus::Optimal;
	std::vector<LevelTrace> levels;
	long long queries = 0, sat = 0, unsat = 0;
	Int declared_points_total = 0; /* sum of per-level grid sizes */
	double elapsed_sec = 0;
	std::string detail; /* oracle chatter on Unknown/Timeout */
};

/* Plain descent: at each level, repeatedly ask the oracle for any grid
 * point strictly below the incumbent value and adopt it; an
 * unsatisfiable query certifies the incumbent as the level's minimum
 * and promotes it to the next, ten times finer, grid. */
SearchResult cegio_g(const Expr &f, const BoxDomain &box, QueryBackend &oracle,
                     const SearchOptions &opts = {});

/* Sliced descent: needs opts.lower_bound.  Each sweep splits
 * [lower_bound, incumbent) into alpha equal slices queried bottom-up,
 * so a satisfiable slice jumps near the bound instead of crawling;
 * refuted slices become lower cuts of the following queries.  Stops as
 * Optimal once incumbent - lower_bound <= stop_gap.  A witness below
 * the stated bound throws SearchError (the bound was wrong). */
SearchResult cegio_s(const Expr &f, const BoxDomain &box, QueryBackend &oracle,
                     const SearchOptions &opts = {});

/* Box-shrinking descent for convex objectives: past level 0 the search
 * domain contracts to one previous-level grid step around the
 * incumbent, keeping every level's grid a constant size.  On
 * non-convex objectives the discarded region may hold the optimum. */
SearchResult cegio_f(const Expr &f, const BoxDomain &box, QueryBackend &oracle,
                     const SearchOptions &opts = {});

} // namespace cegio
