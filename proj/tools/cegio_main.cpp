/* command-line front end: single runs, benchmark sweeps, and baseline
 * comparisons with machine-readable output */
#include "cegio/baselines.hpp"
#include "cegio/benchlib.hpp"
#include "cegio/cegio.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace cegio;
using nlohmann::json;

namespace {

const char *tool_version = "0.1.0";

/* exit codes: 0 success, 1 finished short of Optimal / failed rows,
 * 2 usage, 3 backend or environment failure */
struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};
struct EnvError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* ---------- serialization helpers ---------- */

json rat_json(const Rat &q)
{
	return json{{"num", q.get_num().get_str()},
	            {"den", q.get_den().get_str()},
	            {"dec", rat_decimal(q)}};
}

json point_json(const std::vector<Rat> &x)
{
	json a = json::array();
	for (const Rat &q : x)
		a.push_back(rat_json(q));
	return a;
}

json box_json(const BoxDomain &b)
{
	json a = json::array();
	for (const auto &[lo, hi] : b.bounds)
		a.push_back(json{{"lo", rat_json(lo)}, {"hi", rat_json(hi)}});
	return a;
}

json result_json(const SearchResult &r)
{
	json levels = json::array();
	for (const LevelTrace &t : r.levels) {
		json steps = json::array();
		for (const Candidate &c : t.steps)
			steps.push_back(
			    json{{"k", c.k}, {"value", rat_json(c.value)}});
		levels.push_back(json{{"level", t.level},
		                      {"box", box_json(t.box)},
		                      {"volume", t.grid_volume.get_str()},
		                      {"queries", t.queries},
		                      {"sat", t.sat},
		                      {"unsat", t.unsat},
		                      {"steps", std::move(steps)}});
	}
	return json{{"status", to_string(r.status)},
	            {"value", rat_json(r.best.value)},
	            {"minimizer", point_json(r.best.x)},
	            {"k", r.best.k},
	            {"level", r.best.level.k},
	            {"queries", r.queries},
	            {"sat", r.sat},
	            {"unsat", r.unsat},
	            {"declared_points", r.declared_points_total.get_str()},
	            {"elapsed_sec", r.elapsed_sec},
	            {"detail", r.detail},
	            {"levels", std::move(levels)}};
}

std::string csv_field(const std::string &s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s) {
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

/* ---------- argument parsing helpers ---------- */

Rat parse_rat_arg(const std::string &text)
{
	std::string s = text;
	if (auto cut = s.find('/'); cut != std::string::npos) {
		try {
			Int num(s.substr(0, cut));
			Int den(s.substr(cut + 1));
			if (den == 0)
				throw UsageError("zero denominator in '" +
				                 text + "'");
			return frac(num, den);
		} catch (const std::invalid_argument &) {
			throw UsageError("malformed rational '" + text + "'");
		}
	}
	try {
		return rat_from_decimal(s);
	} catch (const std::invalid_argument &) {
		throw UsageError("malformed rational '" + text + "'");
	}
}

std::vector<Rat> parse_point_arg(const std::string &text)
{
	std::vector<Rat> out;
	std::string part;
	std::istringstream in(text);
	while (std::getline(in, part, ','))
		out.push_back(parse_rat_arg(part));
	if (out.empty())
		throw UsageError("empty point '" + text + "'");
	return out;
}

/* axis specs like "x0:-2:2", one per axis, any order, gapless */
BoxDomain parse_box_flags(const std::vector<std::string> &axes)
{
	if (axes.empty())
		throw UsageError("--expr needs at least one --box axis");
	std::vector<std::pair<Rat, Rat>> bounds(axes.size());
	std::vector<bool> seen(axes.size(), false);
	for (const std::string &spec : axes) {
		size_t c1 = spec.find(':');
		size_t c2 = c1 == std::string::npos ? std::string::npos
		                                    : spec.find(':', c1 + 1);
		if (c2 == std::string::npos)
			throw UsageError("expected xN:lo:hi, got '" + spec +
			                 "'");
		std::string name = spec.substr(0, c1);
		if (name.size() < 2 || name[0] != 'x' ||
		    name.find_first_not_of("0123456789", 1) !=
		        std::string::npos)
			throw UsageError("bad axis name '" + name + "'");
		size_t idx = std::stoul(name.substr(1));
		if (idx >= axes.size())
			throw UsageError("axis " + name + " given but only " +
			                 std::to_string(axes.size()) +
			                 " --box flags present");
		if (seen[idx])
			throw UsageError("axis " + name + " given twice");
		seen[idx] = true;
		Rat lo = parse_rat_arg(spec.substr(c1 + 1, c2 - c1 - 1));
		Rat hi = parse_rat_arg(spec.substr(c2 + 1));
		if (lo > hi)
			throw UsageError("axis " + name +
			                 " has lo > hi");
		bounds[idx] = {lo, hi};
	}
	return BoxDomain(std::move(bounds));
}

/* ---------- shared run plumbing ---------- */

struct SearchFlags {
	std::string bench;
	std::string expr_text;
	std::vector<std::string> box_axes;
	std::string algo = "g";
	int eta = 2;
	std::string backend = "enum";
	std::string solvers_config;
	long long alpha = 10;
	std::string fm; /* empty = default (0 for the sliced search) */
	double timeout = 0;
	long long enum_cap = 10'000'000;
	long long query_budget = 1'000'000;
	std::string init;
	std::uint64_t seed = 0;
};

void add_search_flags(CLI::App *cmd, SearchFlags &fl, bool objective_flags)
{
	if (objective_flags) {
		cmd->add_option("--bench", fl.bench,
		                "benchmark name or id from the catalog");
		cmd->add_option("--expr", fl.expr_text,
		                "inline objective expression");
		cmd->add_option("--box", fl.box_axes,
		                "axis bounds as xN:lo:hi (repeat per axis; "
		                "only with --expr)");
		cmd->add_option("--init", fl.init,
		                "starting point as comma-separated rationals "
		                "(default: box center)");
	}
	cmd->add_option("--algo", fl.algo, "search variant")
	    ->check(CLI::IsMember({"g", "s", "f"}));
	cmd->add_option("--eta", fl.eta, "finest precision level (10^-eta)")
	    ->check(CLI::NonNegativeNumber);
	cmd->add_option("--backend", fl.backend,
	                "falsification oracle: enum or a solver tag");
	cmd->add_option("--solvers-config", fl.solvers_config,
	                "solver config file (default: $CEGIO_SOLVERS)");
	cmd->add_option("--alpha", fl.alpha, "slices per sweep (algo s)");
	cmd->add_option("--fm", fl.fm,
	                "known lower bound (algo s; default 0)");
	cmd->add_option("--timeout", fl.timeout,
	                "per-query solver timeout in seconds");
	cmd->add_option("--enum-cap", fl.enum_cap,
	                "most grid points one enumerator query may cover");
	cmd->add_option("--query-budget", fl.query_budget,
	                "most oracle queries per run");
	cmd->add_option("--seed", fl.seed,
	                "recorded in output; drives baseline randomness");
}

struct Objective {
	Expr f = Expr::constant(Rat(0));
	BoxDomain box;
	std::string expr_text;
	const BenchmarkSpec *bench = nullptr;
};

Objective resolve_objective(const SearchFlags &fl)
{
	if (fl.bench.empty() == fl.expr_text.empty())
		throw UsageError("give exactly one of --bench or --expr");
	Objective obj;
	if (!fl.bench.empty()) {
		if (!fl.box_axes.empty())
			throw UsageError(
			    "--box only applies to --expr objectives");
		try {
			bool digits = fl.bench.find_first_not_of(
			                  "0123456789") == std::string::npos;
			const BenchmarkSpec &b =
			    digits ? benchmark(std::stoi(fl.bench))
			           : benchmark(fl.bench);
			obj.f = b.objective;
			obj.box = b.box;
			obj.expr_text = b.expr_text;
			obj.bench = &b;
		} catch (const BenchError &e) {
			throw UsageError(e.what());
		}
		return obj;
	}
	try {
		obj.f = parse(fl.expr_text);
	} catch (const ParseError &e) {
		throw UsageError("--expr: " + std::string(e.what()));
	}
	obj.expr_text = fl.expr_text;
	obj.box = parse_box_flags(fl.box_axes);
	if ((size_t)free_var_count(obj.f) > obj.box.dim())
		throw UsageError("expression uses more variables than "
		                 "--box flags given");
	return obj;
}

/* resolve the backend choice once; each call mints a fresh instance */
struct BackendFactory {
	bool enumerator = true;
	EnumOptions eopts;
	SolverConfig cfg;

	explicit BackendFactory(const SearchFlags &fl)
	{
		if (fl.backend == "enum") {
			eopts.cap = fl.enum_cap;
			return;
		}
		enumerator = false;
		try {
			cfg = resolve_solver(fl.solvers_config, fl.backend);
		} catch (const BackendError &e) {
			throw EnvError(e.what());
		}
		if (fl.timeout > 0)
			cfg.timeout_sec = fl.timeout;
	}

	std::unique_ptr<QueryBackend> make() const
	{
		if (enumerator)
			return std::make_unique<EnumBackend>(eopts);
		return std::make_unique<SmtBackend>(cfg);
	}
};

SearchOptions make_search_options(const SearchFlags &fl)
{
	SearchOptions o;
	o.eta = fl.eta;
	o.query_budget = fl.query_budget;
	o.alpha = fl.alpha;
	if (!fl.fm.empty())
		o.lower_bound = parse_rat_arg(fl.fm);
	else if (fl.algo == "s")
		o.lower_bound = Rat(0);
	if (!fl.init.empty())
		o.init_point = parse_point_arg(fl.init);
	return o;
}

SearchResult dispatch(const std::string &algo, const Expr &f,
                      const BoxDomain &box, QueryBackend &oracle,
                      const SearchOptions &opts)
{
	if (algo == "g")
		return cegio_g(f, box, oracle, opts);
	if (algo == "s")
		return cegio_s(f, box, oracle, opts);
	return cegio_f(f, box, oracle, opts);
}

std::filesystem::path prepare_out_dir(const std::string &out)
{
	std::filesystem::path dir(out);
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if (ec)
		throw EnvError("cannot create output directory '" + out +
		               "': " + ec.message());
	return dir;
}

void write_out_file(const std::filesystem::path &dir, const std::string &name,
                    const std::string &content)
{
	std::ofstream f(dir / name, std::ios::binary);
	f << content;
	if (!f)
		throw EnvError("cannot write " + (dir / name).string());
}

/* ---------- run ---------- */

json run_record(const SearchFlags &fl, const Objective &obj,
                const SearchResult &res)
{
	json j{{"version", tool_version},
	       {"algo", fl.algo},
	       {"backend", fl.backend},
	       {"eta", fl.eta},
	       {"seed", fl.seed},
	       {"expr", obj.expr_text},
	       {"box", box_json(obj.box)},
	       {"result", result_json(res)}};
	if (obj.bench)
		j["bench"] = json{{"id", obj.bench->id},
		                  {"name", obj.bench->name}};
	if (fl.algo == "s") {
		SearchOptions o = make_search_options(fl);
		j["alpha"] = fl.alpha;
		j["fm"] = rat_json(*o.lower_bound);
	}
	return j;
}

int cmd_run(const SearchFlags &fl, const std::string &out)
{
	Objective obj = resolve_objective(fl);
	BackendFactory backends(fl);
	SearchOptions opts = make_search_options(fl);
	auto oracle = backends.make();
	SearchResult res = dispatch(fl.algo, obj.f, obj.box, *oracle, opts);
	std::string text = run_record(fl, obj, res).dump(2) + "\n";
	std::cout << text;
	if (!out.empty())
		write_out_file(prepare_out_dir(out), "run.json", text);
	return res.status == SearchStatus::Optimal ? 0 : 1;
}

/* ---------- bench ---------- */

struct BenchRow {
	const BenchmarkSpec *bench = nullptr;
	bool completed = false;
	bool pass = false;
	SearchResult res;
	double elapsed_avg = 0;
	std::string error;
};

void run_bench_row(BenchRow &row, const SearchFlags &fl,
                   const BackendFactory &backends, int reps)
{
	const BenchmarkSpec &b = *row.bench;
	try {
		SearchFlags rfl = fl;
		rfl.bench = b.name;
		SearchOptions opts = make_search_options(rfl);
		double total = 0;
		for (int r = 0; r < reps; r++) {
			auto oracle = backends.make();
			row.res = dispatch(fl.algo, b.objective, b.box,
			                   *oracle, opts);
			total += row.res.elapsed_sec;
		}
		row.elapsed_avg = total / reps;
		row.completed = true;
		row.pass = row.res.status == SearchStatus::Optimal &&
		           grid_hit(b, row.res.best.value, fl.eta);
	} catch (const std::exception &e) {
		row.error = e.what();
	}
}

json bench_row_json(const BenchRow &row, const SearchFlags &fl, int reps)
{
	const BenchmarkSpec &b = *row.bench;
	json j{{"id", b.id},
	       {"name", b.name},
	       {"algo", fl.algo},
	       {"backend", fl.backend},
	       {"eta", fl.eta},
	       {"reps", reps},
	       {"known_min", rat_json(b.known_min)},
	       {"pass", row.pass},
	       {"error", row.error}};
	if (row.completed) {
		j["status"] = to_string(row.res.status);
		j["value"] = rat_json(row.res.best.value);
		j["minimizer"] = point_json(row.res.best.x);
		j["abs_err"] = rat_json(abs(row.res.best.value - b.known_min));
		j["queries"] = row.res.queries;
		j["elapsed_sec"] = row.elapsed_avg;
	}
	return j;
}

std::string bench_row_csv(const BenchRow &row, const SearchFlags &fl,
                          int reps)
{
	const BenchmarkSpec &b = *row.bench;
	std::ostringstream out;
	out << b.id << ',' << csv_field(b.name) << ',' << fl.algo << ','
	    << csv_field(fl.backend) << ',' << fl.eta << ',' << reps << ',';
	if (row.completed) {
		Rat err = abs(row.res.best.value - b.known_min);
		out << to_string(row.res.status) << ','
		    << csv_field(rat_string(row.res.best.value)) << ','
		    << rat_decimal(row.res.best.value) << ','
		    << rat_decimal(b.known_min) << ',' << rat_decimal(err)
		    << ',' << (row.pass ? "yes" : "no") << ','
		    << row.res.queries << ',' << row.elapsed_avg << ',';
	} else {
		out << ",,,," << rat_decimal(b.known_min) << ",no,,,";
	}
	out << csv_field(row.error);
	return out.str();
}

const char *bench_csv_header =
    "id,name,algo,backend,eta,reps,status,value,value_dec,known_min_dec,"
    "abs_err_dec,pass,queries,elapsed_sec,error";

int cmd_bench(const SearchFlags &fl,
              const std::vector<std::string> &filter_tokens, int reps,
              int jobs, const std::string &out, const std::string &format)
{
	unsigned tags = 0;
	for (const std::string &tok : filter_tokens) {
		try {
			tags |= bench_tag_from_name(tok);
		} catch (const BenchError &e) {
			throw UsageError(e.what());
		}
	}
	auto set = benchmarks(tags);
	if (set.empty())
		throw UsageError("no benchmark matches the filter");
	if (reps < 1)
		throw UsageError("--reps must be at least 1");
	if (jobs < 1)
		throw UsageError("--jobs must be at least 1");

	BackendFactory backends(fl);
	std::vector<BenchRow> rows(set.size());
	for (size_t i = 0; i < set.size(); i++)
		rows[i].bench = set[i];

	std::atomic<size_t> cursor{0};
	auto worker = [&] {
		for (;;) {
			size_t i = cursor.fetch_add(1);
			if (i >= rows.size())
				return;
			run_bench_row(rows[i], fl, backends, reps);
		}
	};
	if (jobs == 1) {
		worker();
	} else {
		std::vector<std::thread> pool;
		for (int t = 0; t < jobs; t++)
			pool.emplace_back(worker);
		for (auto &t : pool)
			t.join();
	}

	/* rows come out in catalog id order no matter which worker
	 * finished first */
	std::ostringstream table;
	if (format == "csv") {
		table << bench_csv_header << "\n";
		for (const BenchRow &row : rows)
			table << bench_row_csv(row, fl, reps) << "\n";
	} else {
		for (const BenchRow &row : rows)
			table << bench_row_json(row, fl, reps).dump() << "\n";
	}
	std::cout << table.str();
	if (!out.empty())
		write_out_file(prepare_out_dir(out),
		               format == "csv" ? "bench.csv" : "bench.jsonl",
		               table.str());

	for (const BenchRow &row : rows)
		if (!row.pass)
			return 1;
	return 0;
}

/* ---------- compare ---------- */

std::string trajectory_csv(size_t dim, const std::vector<BaselineStep> &steps)
{
	std::ostringstream out;
	out << "iteration";
	for (size_t i = 0; i < dim; i++)
		out << ",x" << i;
	out << ",f\n";
	for (const BaselineStep &s : steps) {
		out << s.iteration;
		for (const Rat &q : s.point.x)
			out << ',' << rat_decimal(q);
		out << ',' << rat_decimal(s.point.value) << "\n";
	}
	return out.str();
}

std::vector<BaselineStep> flatten_search_steps(const SearchResult &res)
{
	std::vector<BaselineStep> steps;
	for (const LevelTrace &t : res.levels)
		for (const Candidate &c : t.steps) {
			/* level handoffs repeat the incumbent; keep one */
			if (!steps.empty() &&
			    steps.back().point.value == c.value &&
			    steps.back().point.x == c.x)
				continue;
			steps.push_back(
			    {(long long)steps.size(), c});
		}
	return steps;
}

int cmd_compare(const SearchFlags &fl, const BaselineParams &bp,
                const std::string &out, const std::string &format)
{
	if (out.empty())
		throw UsageError("compare needs --out for the plot files");
	Objective obj = resolve_objective(fl);
	BackendFactory backends(fl);
	SearchOptions opts = make_search_options(fl);
	std::filesystem::path dir = prepare_out_dir(out);

	std::vector<Rat> init =
	    opts.init_point ? *opts.init_point : obj.box.center();

	struct Series {
		std::string method;
		std::string file;
		bool completed = false;
		Candidate final;
		std::string status = "Optimal";
		long long effort = 0;
		double elapsed = 0;
		std::vector<BaselineStep> steps;
		std::string error;
	};
	std::vector<Series> series(3);

	series[0].method = "cegio-" + fl.algo;
	series[0].file = "cegio.csv";
	try {
		auto oracle = backends.make();
		SearchResult res =
		    dispatch(fl.algo, obj.f, obj.box, *oracle, opts);
		series[0].completed = true;
		series[0].final = res.best;
		series[0].status = to_string(res.status);
		series[0].effort = res.queries;
		series[0].elapsed = res.elapsed_sec;
		series[0].steps = flatten_search_steps(res);
	} catch (const std::exception &e) {
		series[0].error = e.what();
	}

	series[1].method = "simulated-annealing";
	series[1].file = "annealing.csv";
	try {
		auto t0 = std::chrono::steady_clock::now();
		series[1].final = simulated_annealing(obj.f, obj.box, bp, init,
		                                      &series[1].steps);
		series[1].elapsed = std::chrono::duration<double>(
		                        std::chrono::steady_clock::now() - t0)
		                        .count();
		series[1].completed = true;
		series[1].effort = bp.budget;
	} catch (const std::exception &e) {
		series[1].error = e.what();
	}

	series[2].method = "pattern-search";
	series[2].file = "pattern.csv";
	try {
		auto t0 = std::chrono::steady_clock::now();
		series[2].final = pattern_search(obj.f, obj.box, bp, init,
		                                 &series[2].steps);
		series[2].elapsed = std::chrono::duration<double>(
		                        std::chrono::steady_clock::now() - t0)
		                        .count();
		series[2].completed = true;
		series[2].effort = series[2].steps.empty()
		                       ? 0
		                       : series[2].steps.back().iteration;
	} catch (const std::exception &e) {
		series[2].error = e.what();
	}

	for (const Series &s : series)
		if (s.completed)
			write_out_file(dir, s.file,
			               trajectory_csv(obj.box.dim(), s.steps));

	std::ostringstream table;
	if (format == "csv") {
		table << "method,status,value,value_dec,effort,elapsed_sec,"
		         "file,error\n";
		for (const Series &s : series) {
			table << s.method << ',';
			if (s.completed)
				table << s.status << ','
				      << csv_field(rat_string(s.final.value))
				      << ',' << rat_decimal(s.final.value)
				      << ',' << s.effort << ',' << s.elapsed
				      << ',' << s.file;
			else
				table << ",,,,,";
			table << ',' << csv_field(s.error) << "\n";
		}
	} else {
		json rows = json::array();
		for (const Series &s : series) {
			json j{{"method", s.method}, {"error", s.error}};
			if (s.completed) {
				j["status"] = s.status;
				j["value"] = rat_json(s.final.value);
				j["point"] = point_json(s.final.x);
				j["effort"] = s.effort;
				j["elapsed_sec"] = s.elapsed;
				j["file"] = s.file;
			}
			rows.push_back(std::move(j));
		}
		json rec{{"version", tool_version},
		         {"expr", obj.expr_text},
		         {"box", box_json(obj.box)},
		         {"eta", fl.eta},
		         {"seed", fl.seed},
		         {"budget", bp.budget},
		         {"init", point_json(init)},
		         {"series", std::move(rows)}};
		if (obj.bench)
			rec["bench"] = json{{"id", obj.bench->id},
			                    {"name", obj.bench->name}};
		table << rec.dump(2) << "\n";
	}
	std::cout << table.str();
	write_out_file(dir, format == "csv" ? "compare.csv" : "compare.json",
	               table.str());

	for (const Series &s : series)
		if (!s.completed)
			return 1;
	return series[0].status == "Optimal" ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"counterexample-guided grid optimization toolkit"};
	app.set_version_flag("--version", tool_version);
	app.require_subcommand(1);

	SearchFlags fl;
	std::string out_dir;
	std::string format = "json";
	std::vector<std::string> filter_tokens;
	int reps = 1, jobs = 1;
	BaselineParams bp;
	std::string step_text, min_step_text, contraction_text;

	CLI::App *run = app.add_subcommand(
	    "run", "optimize one objective and print a JSON record");
	add_search_flags(run, fl, true);
	run->add_option("--out", out_dir, "directory for run.json");

	CLI::App *bench = app.add_subcommand(
	    "bench", "sweep catalog benchmarks; one row each");
	add_search_flags(bench, fl, false);
	bench->add_option("--filter", filter_tokens,
	                  "keep only entries carrying every given tag");
	bench->add_option("--reps", reps, "repetitions per row (times "
	                                  "are averaged)");
	bench->add_option("--jobs", jobs, "rows to run in parallel");
	bench->add_option("--out", out_dir, "directory for the table file");
	bench->add_option("--format", format, "table format")
	    ->check(CLI::IsMember({"json", "csv"}));

	CLI::App *compare = app.add_subcommand(
	    "compare", "race the search against local-search baselines "
	               "and write plot-ready trajectories");
	add_search_flags(compare, fl, true);
	compare->add_option("--budget", bp.budget,
	                    "objective evaluations per baseline");
	compare->add_option("--sa-temp", bp.initial_temp,
	                    "annealing initial temperature");
	compare->add_option("--sa-cooling", bp.cooling,
	                    "annealing geometric cooling rate");
	compare->add_option("--step", step_text,
	                    "pattern-search initial step");
	compare->add_option("--contraction", contraction_text,
	                    "pattern-search step contraction");
	compare->add_option("--min-step", min_step_text,
	                    "pattern-search terminal step");
	compare->add_option("--out", out_dir,
	                    "directory for trajectory CSV files (required)");
	compare->add_option("--format", format, "summary format")
	    ->check(CLI::IsMember({"json", "csv"}));

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	try {
		if (run->parsed())
			return cmd_run(fl, out_dir);
		if (bench->parsed())
			return cmd_bench(fl, filter_tokens, reps, jobs,
			                 out_dir, format);
		bp.seed = fl.seed;
		if (!step_text.empty())
			bp.initial_step = parse_rat_arg(step_text);
		if (!contraction_text.empty())
			bp.contraction = parse_rat_arg(contraction_text);
		if (!min_step_text.empty())
			bp.min_step = parse_rat_arg(min_step_text);
		return cmd_compare(fl, bp, out_dir, format);
	} catch (const UsageError &e) {
		std::cerr << "error: " << e.what() << "\n"
		          << "run '" << argv[0]
		          << " --help' for usage\n";
		return 2;
	} catch (const EnvError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 3;
	} catch (const BackendError &e) {
		std::cerr << "backend error: " << e.what() << "\n";
		return 3;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
}
