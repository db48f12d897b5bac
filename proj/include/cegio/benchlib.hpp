/* registry of two-variable global-optimization benchmark functions */
#pragma once

#include "cegio/expr.hpp"
#include "cegio/grid.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cegio {

struct BenchError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Applicability tags, combinable as a bitmask. */
enum BenchTag : unsigned {
	tag_convex = 1u << 0,
	tag_semidefinite_positive = 1u << 1, /* known lower bound 0 */
	tag_multimodal = 1u << 2,
	tag_as_printed_discrepancy = 1u << 3, /* quoted row damaged; values
	                                         derived, see note */
};

/* Catalog token ("convex", "semidefinite-positive", "multimodal",
 * "as-printed-discrepancy") -> tag bit; throws BenchError otherwise. */
unsigned bench_tag_from_name(std::string_view token);

/* Space-separated catalog tokens for a mask, in declaration order. */
std::string bench_tag_names(unsigned tags);

struct BenchmarkSpec {
	int id = 0;
	std::string name;
	std::string expr_text;
	Expr objective = Expr::constant(Rat(0)); /* parse(expr_text) */
	BoxDomain box;  /* always two axes */
	Rat known_min;
	/* Known minimizer points; quoted to a few decimals when the exact
	 * spot is irrational, hence the per-entry tolerance. */
	std::vector<std::vector<Rat>> minimizers;
	Rat tolerance; /* |f(minimizer) - known_min| bound, default 1/2000 */
	/* Grid-resolution allowance: a level-eta grid minimum counts as a
	 * hit when |value - known_min| <= max(tolerance, slack * 10^-eta).
	 * Zero for entries whose tolerance already covers coarse grids. */
	Rat slack = Rat(0);
	unsigned tags = 0;
	bool listed = true; /* false: lookup-only, outside the 30-entry suite */
	std::string note;

	bool has(unsigned mask) const { return (tags & mask) == mask; }
};

/* The compiled-in catalog (the contents of data/benchmarks.txt), in id
 * order.  Built once, then read-only. */
const std::vector<BenchmarkSpec> &benchmark_registry();

/* Lookup by id or by exact name; throws BenchError when unknown. */
const BenchmarkSpec &benchmark(int id);
const BenchmarkSpec &benchmark(std::string_view name);

/* Listed entries carrying every tag in `tags` (all of them for 0),
 * in id order.  Lookup-only entries never appear here. */
std::vector<const BenchmarkSpec *> benchmarks(unsigned tags = 0);

/* Hit test for a level-eta grid minimum (exact comparison):
 * |value - known_min| <= max(tolerance, slack * 10^-eta). */
bool grid_hit(const BenchmarkSpec &b, const Rat &value, int eta);

/* Parse a catalog (same format as data/benchmarks.txt).  `origin` names
 * the source in error messages.  Throws BenchError on malformed input,
 * duplicate ids or names, non-two-dimensional boxes, expressions that
 * do not parse, or minimizers outside the box. */
std::vector<BenchmarkSpec> load_catalog(std::istream &in,
                                        std::string_view origin);
std::vector<BenchmarkSpec> load_catalog_file(const std::string &path);

} // namespace cegio
