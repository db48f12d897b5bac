/* falsification oracles: external SMT solver processes and the built-in
 * exhaustive enumerator */
#pragma once

#include "cegio/encode.hpp"

#include <string>
#include <vector>

namespace cegio {

struct BackendError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

enum class VerdictKind { Sat, Unsat, Unknown, Timeout };

struct Verdict {
	VerdictKind kind = VerdictKind::Unknown;
	std::vector<long long> witness; /* grid coordinates, Sat only */
	std::string detail;             /* solver chatter / reason */
};

/* How to invoke one external solver.  If some argv element contains
 * "{file}" the script is passed via a temporary file substituted there;
 * otherwise it is written to the child's stdin. */
struct SolverConfig {
	std::string name;
	std::vector<std::string> argv;
	double timeout_sec = 60.0;
	std::string logic = "QF_NIRA";
};

/* INI-style file: one [name] section per solver with keys cmd (required,
 * shell-like quoting), timeout (seconds), logic.  File order is kept. */
std::vector<SolverConfig> load_solver_configs(const std::string &path);

/* Resolve a solver by name from `path`; empty name picks the first
 * section.  Empty path falls back to $CEGIO_SOLVERS. */
SolverConfig resolve_solver(const std::string &path, const std::string &name);

/* Run the script through the solver process.  Kills the child on
 * timeout (Timeout verdict).  Throws BackendError when the process
 * cannot be spawned or its output is unparseable. */
Verdict run_solver(const SmtScript &script, const SolverConfig &cfg);

/* Extract the K values (in `symbols` order) from a solver's get-value
 * output, e.g. "((K0 0) (K1 (- 7)))". */
std::vector<long long> parse_model(std::string_view output,
                                   const std::vector<std::string> &symbols);

struct EnumOptions {
	long long cap = 10'000'000; /* most grid points a query may cover */
	bool prune = true;          /* interval-based subtree skipping */
};

/* Decide the query by scanning the grid in lexicographic coordinate
 * order; Sat yields the first satisfying point.  Interval pruning (on
 * by default) skips subtrees that provably contain no witness, which
 * never changes the answer.  Never returns Unknown. */
Verdict enum_check(const Query &q, const EnumOptions &opts = {});

/* Lexicographically-first exact minimizer over the grid. */
Candidate enumerate_min(const Expr &f, const GridSpec &grid,
                        const EnumOptions &opts = {});

/* A falsification oracle the search loops can query. */
class QueryBackend {
public:
	virtual ~QueryBackend() = default;
	virtual Verdict answer(const Query &q) = 0;
	virtual std::string name() const = 0;
};

class EnumBackend final : public QueryBackend {
	EnumOptions opts;

public:
	explicit EnumBackend(EnumOptions o = {}) : opts(o) {}
	Verdict answer(const Query &q) override { return enum_check(q, opts); }
	std::string name() const override { return "enum"; }
};

class SmtBackend final : public QueryBackend {
	SolverConfig cfg;
	EncodeOptions eopts;

public:
	explicit SmtBackend(SolverConfig c, EncodeOptions e = {});
	Verdict answer(const Query &q) override;
	std::string name() const override { return "smt:" + cfg.name; }
};

} // namespace cegio
