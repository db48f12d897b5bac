/* falsification queries and their SMT-LIB2 encoding */
#pragma once

#include "cegio/grid.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cegio {

/* "Is there a grid point x with f(x) < threshold (and, when the lower
 * region is already refuted, lower_cut <= f(x))?" */
struct Query {
	Expr objective;
	GridSpec grid;
	Rat threshold;                /* strict upper bound */
	std::optional<Rat> lower_cut; /* inclusive lower bound */
};

/* Throws GridError unless every variable of the objective is bound by
 * the grid. */
void validate_query(const Query &q);

struct EncodeError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct EncodeOptions {
	std::string logic = "QF_NIRA";
	/* largest tabulation table per transcendental call */
	long long table_cap = 100001;
};

struct SmtScript {
	std::string text;
	std::vector<std::string> k_symbols; /* declaration order */
};

/* Byte-deterministic SMT-LIB2 script: integer unknowns K_i with grid
 * bounds, x_i = K_i / p as exact real terms, the objective asserted
 * below threshold (and at or above lower_cut when present), check-sat
 * plus get-value over all K_i.  Transcendental calls whose argument is
 * affine in one variable become ite tables over that variable's grid
 * range; closed transcendental subterms are folded to constants.
 * Throws EncodeError for anything else. */
SmtScript encode_query(const Query &q, const EncodeOptions &opts = {});

/* The quantized value of `node` (a transcendental call whose argument
 * is affine in exactly one variable) at each admissible grid
 * coordinate of that variable. */
std::vector<std::pair<long long, Rat>>
tabulate(const Expr &node, const GridSpec &grid, long long cap = 100001);

} // namespace cegio
