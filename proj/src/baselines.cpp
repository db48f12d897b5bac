/* derivative-free local-search baselines */
#include "cegio/baselines.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace cegio {

namespace {

long long clamp_to(const Int &k, long long lo, long long hi)
{
	if (k < int_of(lo))
		return lo;
	if (k > int_of(hi))
		return hi;
	return (long long)k.get_si();
}

/* The lattice both baselines walk on: fine enough that the snap error
 * (5e-13 per axis) is far below anything the tests or comparisons
 * resolve, coarse enough that coordinates stay exact rationals. */
const PrecisionLevel &walk_level()
{
	static const PrecisionLevel lvl = PrecisionLevel::at(12);
	return lvl;
}

long long snap_axis(const Rat &x, const GridSpec &grid, size_t i)
{
	return clamp_to(round_half_up(x * Rat(grid.level.p)),
	                grid.krange[i].first, grid.krange[i].second);
}

Candidate snapped_init(const Expr &f, const BoxDomain &box,
                       const GridSpec &grid, std::vector<Rat> &init)
{
	if (init.size() != box.dim())
		throw std::invalid_argument(
		    "starting point has the wrong dimension");
	if (!box.contains(init))
		throw std::invalid_argument(
		    "starting point lies outside the domain");
	std::vector<long long> k(grid.dim());
	for (size_t i = 0; i < grid.dim(); i++)
		k[i] = snap_axis(init[i], grid, i);
	return make_candidate(f, std::move(k), grid.level);
}

void check_common(const BaselineParams &p)
{
	if (p.budget <= 0)
		throw std::invalid_argument("budget must be positive");
}

void record(std::vector<BaselineStep> *trace, long long it,
            const Candidate &c)
{
	if (trace)
		trace->push_back({it, c});
}

/* uniform in [0,1) from the top 53 bits; keeps the stream independent
 * of any library's distribution internals */
double unit(std::mt19937_64 &rng)
{
	return (double)(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Candidate simulated_annealing(const Expr &f, const BoxDomain &box,
                              const BaselineParams &params,
                              std::vector<Rat> init,
                              std::vector<BaselineStep> *trace)
{
	check_common(params);
	if (!(params.initial_temp > 0.0))
		throw std::invalid_argument(
		    "initial temperature must be positive");
	if (!(params.cooling > 0.0 && params.cooling < 1.0))
		throw std::invalid_argument(
		    "cooling rate must lie strictly between 0 and 1");

	GridSpec grid = make_grid(box, walk_level());
	Candidate cur = snapped_init(f, box, grid, init);
	Candidate best = cur;
	record(trace, 0, cur);

	std::vector<double> halfwidth(box.dim());
	for (size_t i = 0; i < box.dim(); i++)
		halfwidth[i] = to_nearest_double(
		    (box.bounds[i].second - box.bounds[i].first) / 2);

	std::mt19937_64 rng(params.seed);
	double temp = params.initial_temp;
	for (long long it = 1; it <= params.budget; it++) {
		/* uniform proposal in the temperature-scaled box-clipped
		 * neighborhood; the draw count per iteration is fixed so
		 * the stream never depends on earlier accept decisions */
		double scale = std::min(1.0, temp);
		std::vector<long long> k(grid.dim());
		for (size_t i = 0; i < grid.dim(); i++) {
			double off =
			    (2.0 * unit(rng) - 1.0) * scale * halfwidth[i];
			Rat x = cur.x[i] + rat_from_double(off);
			k[i] = snap_axis(x, grid, i);
		}
		double u = unit(rng);
		Candidate cand = make_candidate(f, std::move(k), grid.level);
		Rat delta = cand.value - cur.value;
		bool accept =
		    sgn(delta) < 0 ||
		    u < std::exp(-to_nearest_double(delta) / temp);
		if (accept) {
			cur = std::move(cand);
			record(trace, it, cur);
			if (cur.value < best.value)
				best = cur;
		}
		temp *= params.cooling;
	}
	return best;
}

Candidate pattern_search(const Expr &f, const BoxDomain &box,
                         const BaselineParams &params, std::vector<Rat> init,
                         std::vector<BaselineStep> *trace)
{
	check_common(params);
	if (sgn(params.initial_step) <= 0)
		throw std::invalid_argument("initial step must be positive");
	if (!(sgn(params.contraction) > 0 && params.contraction < 1))
		throw std::invalid_argument(
		    "contraction factor must lie strictly between 0 and 1");
	if (sgn(params.min_step) <= 0)
		throw std::invalid_argument("minimum step must be positive");

	GridSpec grid = make_grid(box, walk_level());
	Candidate cur = snapped_init(f, box, grid, init);
	record(trace, 0, cur);

	Rat step = params.initial_step;
	long long evals = 0;
	while (step >= params.min_step) {
		/* one compass round: +/- step on each axis, first strict
		 * improvement moves and restarts the round */
		bool improved = false;
		for (size_t i = 0; i < grid.dim() && !improved; i++) {
			for (int dir : {1, -1}) {
				long long ki =
				    snap_axis(cur.x[i] + dir * step, grid, i);
				if (ki == cur.k[i])
					continue; /* clipped or sub-pitch */
				if (evals == params.budget)
					return cur;
				std::vector<long long> k = cur.k;
				k[i] = ki;
				Candidate cand =
				    make_candidate(f, std::move(k), grid.level);
				evals++;
				if (cand.value < cur.value) {
					cur = std::move(cand);
					record(trace, evals, cur);
					improved = true;
					break;
				}
			}
		}
		if (!improved)
			step *= params.contraction;
	}
	return cur;
}

} // namespace cegio
