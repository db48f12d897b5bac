/* fixed-point rational grids over box domains */
#pragma once

#include "cegio/expr.hpp"
#include "cegio/rational.hpp"

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cegio {

struct GridError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Axis-aligned box with exact rational bounds, lo <= hi per axis. */
struct BoxDomain {
	std::vector<std::pair<Rat, Rat>> bounds;

	BoxDomain() = default;
	explicit BoxDomain(std::vector<std::pair<Rat, Rat>> b);
	/* n copies of [lo, hi] */
	static BoxDomain uniform(size_t n, const Rat &lo, const Rat &hi);

	size_t dim() const { return bounds.size(); }
	bool contains(std::span<const Rat> x) const;
	std::vector<Rat> center() const;
};

/* Grid pitch 1/p with p = 10^k, k >= 0. */
struct PrecisionLevel {
	int k = 0;
	Int p = 1;

	static PrecisionLevel at(int k);
	Rat pitch() const { return Rat(1, p); }
};

/* The finite point set { (K_0/p, ..., K_{n-1}/p) : Klo_i <= K_i <= Khi_i }
 * obtained by intersecting the level-k lattice with a box. */
struct GridSpec {
	BoxDomain box;
	PrecisionLevel level;
	std::vector<std::pair<long long, long long>> krange;

	size_t dim() const { return krange.size(); }
	Int volume() const; /* number of grid points */
	bool in_range(std::span<const long long> k) const;
};

/* Klo_i = ceil(lo_i * p), Khi_i = floor(hi_i * p); throws GridError if
 * any axis has no lattice point or the coordinates overflow. */
GridSpec make_grid(const BoxDomain &box, const PrecisionLevel &level);

/* x_i = K_i / p, exact. */
std::vector<Rat> to_point(std::span<const long long> k,
                          const PrecisionLevel &level);

/* Intersection of `original` with the cube of half-width `radius`
 * centered at `center`; precondition: center lies in `original`. */
BoxDomain shrink_box(const BoxDomain &original, std::span<const Rat> center,
                     const Rat &radius);

/* One search iterate: integer grid coordinates plus their exact point
 * and objective value (computed on construction, so the invariants
 * x = k/p and value = evaluate(f, x) hold by construction). */
struct Candidate {
	std::vector<long long> k;
	PrecisionLevel level;
	std::vector<Rat> x;
	Rat value;
};

Candidate make_candidate(const Expr &f, std::vector<long long> k,
                         const PrecisionLevel &level);

} // namespace cegio
