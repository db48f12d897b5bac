/* derivative-free local-search baselines for qualitative comparison */
#pragma once

#include "cegio/expr.hpp"
#include "cegio/grid.hpp"

#include <cstdint>
#include <vector>

namespace cegio {

/* Shared knob set for both baselines.  Every visited point is snapped to
 * the level-12 grid (pitch 10^-12) of the search box, so results are
 * exact rationals and runs are bit-for-bit reproducible. */
struct BaselineParams {
	long long budget = 10000; /* objective evaluations, > 0 */
	std::uint64_t seed = 0;

	/* simulated annealing */
	double initial_temp = 1.0; /* > 0; also scales the proposal
	                              neighborhood (axis half-width times
	                              min(1, T)) */
	double cooling = 0.995;    /* geometric, in (0,1) */

	/* pattern search */
	Rat initial_step = Rat(1);        /* > 0, in coordinate units */
	Rat contraction = frac(1, 2);     /* in (0,1) */
	Rat min_step = frac(1, 1000000);  /* > 0; termination threshold */
};

/* One accepted move: the evaluation index it happened at (0 = the
 * snapped initial point) and the iterate. */
struct BaselineStep {
	long long iteration = 0;
	Candidate point;
};

/* Classic Metropolis annealing: per axis, proposals are uniform in a
 * temperature-scaled, box-clipped neighborhood of the current point;
 * uphill moves are accepted with probability exp(-delta/T); the
 * temperature cools geometrically after every proposal.  Returns the
 * best point ever scored (hence never worse than the snapped init).
 * Deterministic for fixed (params, init). */
Candidate simulated_annealing(const Expr &f, const BoxDomain &box,
                              const BaselineParams &params,
                              std::vector<Rat> init,
                              std::vector<BaselineStep> *trace = nullptr);

/* Compass pattern search: polls +/- step along each axis in order,
 * moves on the first strict improvement and re-polls from the first
 * axis; a full failed round contracts the step until it drops below
 * min_step or the budget is spent.  Fully deterministic. */
Candidate pattern_search(const Expr &f, const BoxDomain &box,
                         const BaselineParams &params, std::vector<Rat> init,
                         std::vector<BaselineStep> *trace = nullptr);

} // namespace cegio
