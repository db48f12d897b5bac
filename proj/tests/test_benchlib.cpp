#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cegio/benchlib.hpp"

#include <filesystem>
#include <set>
#include <sstream>

using namespace cegio;

namespace {

std::string catalog_path()
{
	auto p = std::filesystem::path(__FILE__).parent_path().parent_path() /
	         "data" / "benchmarks.txt";
	return p.string();
}

std::vector<int> ids_of(const std::vector<const BenchmarkSpec *> &v)
{
	std::vector<int> out;
	for (const BenchmarkSpec *s : v)
		out.push_back(s->id);
	return out;
}

/* nearest level-6 grid point inside the box */
std::vector<Rat> snap6(const BoxDomain &box, const std::vector<Rat> &m)
{
	const Int p = PrecisionLevel::at(6).p;
	std::vector<Rat> out;
	for (size_t i = 0; i < m.size(); i++) {
		Int k = round_half_up(m[i] * p);
		k = std::max(k, ceil_rat(box.bounds[i].first * p));
		k = std::min(k, floor_rat(box.bounds[i].second * p));
		out.push_back(frac(k, p));
	}
	return out;
}

std::vector<BenchmarkSpec> from_text(const std::string &text)
{
	std::istringstream in(text);
	return load_catalog(in, "<test>");
}

} // namespace

TEST_CASE("registry lists the thirty standard entries in id order")
{
	auto all = benchmarks();
	REQUIRE(all.size() == 30);
	for (int i = 0; i < 30; i++) {
		CHECK(all[i]->id == i + 1);
		CHECK(all[i]->listed);
	}
	/* the two supplementary entries are lookup-only */
	CHECK(benchmark_registry().size() == 32);
	CHECK_FALSE(benchmark(31).listed);
	CHECK_FALSE(benchmark(32).listed);
}

TEST_CASE("tag filters reproduce the experiment subsets")
{
	CHECK(ids_of(benchmarks(tag_semidefinite_positive)) ==
	      std::vector<int>{ 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 19,
	                        20 });
	CHECK(ids_of(benchmarks(tag_convex)) ==
	      std::vector<int>{ 2, 3, 4, 5, 9, 12, 19, 24, 25, 29 });
	/* filters are conjunctions */
	CHECK(ids_of(benchmarks(tag_convex | tag_semidefinite_positive)) ==
	      std::vector<int>{ 2, 3, 4, 5, 9, 12, 19 });
	CHECK(ids_of(benchmarks(tag_multimodal)) ==
	      std::vector<int>{ 1, 5, 6, 7, 10, 13, 14, 18, 20, 21, 22, 26, 27,
	                        28, 30 });
	CHECK(ids_of(benchmarks(tag_as_printed_discrepancy)) ==
	      std::vector<int>{ 14, 18, 20, 26, 27, 29, 30 });
}

TEST_CASE("lookup by name and id")
{
	CHECK(benchmark("booth").id == 2);
	CHECK(benchmark("booth").box.bounds[0].first == -10);
	CHECK(benchmark("booth").box.bounds[1].second == 10);
	CHECK(benchmark(14).name == "branin_rcos");
	CHECK(benchmark(14).minimizers.size() == 3);
	CHECK(benchmark(14).known_min == frac(3978873, 10000000));
	CHECK(benchmark("styblinski_tang").known_min == frac(-78332, 1000));
	CHECK(benchmark("sphere").box.bounds[0].first == 0);
	CHECK(benchmark("zettl").box.bounds[0] ==
	      std::pair<Rat, Rat>(Rat(-5), Rat(10)));
	CHECK(&benchmark("ursem03") == &benchmark(31));
	CHECK_THROWS_AS((void)benchmark("boooth"), BenchError);
	CHECK_THROWS_AS((void)benchmark(0), BenchError);
	CHECK_THROWS_AS((void)benchmark(33), BenchError);
}

TEST_CASE("registry self-check: minimizers hit the known minimum")
{
	for (const BenchmarkSpec &s : benchmark_registry()) {
		CAPTURE(s.name);
		CHECK(s.box.dim() == 2);
		CHECK(free_var_count(s.objective) <= 2);
		/* the stored text and the parsed tree agree */
		CHECK(parse(print(s.objective)).same_tree(s.objective));
		CHECK(parse(s.expr_text).same_tree(s.objective));
		REQUIRE(!s.minimizers.empty());
		for (const auto &m : s.minimizers) {
			REQUIRE(m.size() == 2);
			CHECK(s.box.contains(m));
			std::vector<Rat> x = snap6(s.box, m);
			Rat v = evaluate(s.objective, x);
			Rat diff = abs(v - s.known_min);
			CAPTURE(rat_decimal(v));
			CHECK(diff <= s.tolerance);
		}
		if (s.has(tag_as_printed_discrepancy))
			CHECK(!s.note.empty());
	}
}

TEST_CASE("grid-exact minima evaluate exactly, not just within tolerance")
{
	auto at = [](const BenchmarkSpec &s, long a, long b, long den) {
		std::vector<Rat> x{ frac(a, den), frac(b, den) };
		return evaluate(s.objective, x);
	};
	CHECK(at(benchmark("booth"), 1, 3, 1) == 0);
	CHECK(at(benchmark("himmelblau"), 3, 2, 1) == 0);
	CHECK(at(benchmark("tsoulos"), 0, 0, 1) == -2);
	CHECK(at(benchmark("cosine_mixture"), 0, 0, 1) == frac(-1, 5));
	CHECK(at(benchmark("trecanni"), -2, 0, 1) == 0);
	CHECK(at(benchmark("price4"), 2, 4, 1) == 0);
	CHECK(at(benchmark("s2"), 3, 7, 10) == 2);
	CHECK(at(benchmark("step2"), 4, -4, 10) == 0);
	CHECK(at(benchmark("ursem03"), 0, 0, 1) == -3);
}

TEST_CASE("as-printed variant pins the derived grid golden exactly")
{
	const BenchmarkSpec &s = benchmark("ursem03_as_printed");
	CHECK(s.known_min ==
	      frac(Int("-39769773769667001"), Int("20000000000000000")));
	/* the stored minimizer is a p=100 grid point; evaluating there
	 * must reproduce the derived value bit for bit */
	CHECK(s.minimizers.size() == 1);
	CHECK(evaluate(s.objective, s.minimizers[0]) == s.known_min);
	/* the origin is the advertised minimum of the corrected form only */
	std::vector<Rat> origin{ Rat(0), Rat(0) };
	CHECK(evaluate(s.objective, origin) == 3);
	CHECK(evaluate(benchmark("ursem03").objective, origin) == -3);
}

TEST_CASE("semidefinite-positive entries are nonnegative at probe points")
{
	/* spot probes; the tag promises lower bound 0 */
	std::vector<std::vector<Rat>> probes;
	for (long a : { -7, -1, 0, 2, 9 })
		for (long b : { -5, 0, 3 })
			probes.push_back({ frac(a, 2), frac(b, 3) });
	for (const BenchmarkSpec *s : benchmarks(tag_semidefinite_positive)) {
		CAPTURE(s->name);
		for (auto &x : probes) {
			std::vector<Rat> q = snap6(s->box, x);
			CHECK(evaluate(s->objective, q) >= 0);
		}
	}
}

TEST_CASE("the shipped catalog file round-trips the registry")
{
	auto file = load_catalog_file(catalog_path());
	const auto &reg = benchmark_registry();
	REQUIRE(file.size() == reg.size());
	for (size_t i = 0; i < reg.size(); i++) {
		CAPTURE(reg[i].name);
		CHECK(file[i].id == reg[i].id);
		CHECK(file[i].name == reg[i].name);
		CHECK(file[i].expr_text == reg[i].expr_text);
		CHECK(file[i].objective.same_tree(reg[i].objective));
		CHECK(file[i].box.bounds == reg[i].box.bounds);
		CHECK(file[i].known_min == reg[i].known_min);
		CHECK(file[i].minimizers == reg[i].minimizers);
		CHECK(file[i].tolerance == reg[i].tolerance);
		CHECK(file[i].slack == reg[i].slack);
		CHECK(file[i].tags == reg[i].tags);
		CHECK(file[i].listed == reg[i].listed);
		CHECK(file[i].note == reg[i].note);
	}
}

TEST_CASE("tag token mapping")
{
	CHECK(bench_tag_from_name("convex") == tag_convex);
	CHECK(bench_tag_from_name("semidefinite-positive") ==
	      tag_semidefinite_positive);
	CHECK(bench_tag_from_name("multimodal") == tag_multimodal);
	CHECK(bench_tag_from_name("as-printed-discrepancy") ==
	      tag_as_printed_discrepancy);
	CHECK_THROWS_AS(bench_tag_from_name("sdp"), BenchError);
	CHECK(bench_tag_names(tag_convex | tag_multimodal) ==
	      "convex multimodal");
	CHECK(bench_tag_names(0) == "");
}

TEST_CASE("catalog loader accepts a minimal well-formed record")
{
	auto specs = from_text("[tiny]\n"
	                       "id = 7\n"
	                       "expr = x0^2 + x1^2\n"
	                       "box = -1:1 -1:1\n"
	                       "min = 0\n"
	                       "minimizers = (0, 0)\n");
	REQUIRE(specs.size() == 1);
	CHECK(specs[0].name == "tiny");
	CHECK(specs[0].id == 7);
	CHECK(specs[0].tolerance == frac(1, 2000));
	CHECK(specs[0].slack == Rat(0));
	CHECK(specs[0].tags == 0);
	CHECK(specs[0].listed);
	CHECK(specs[0].note.empty());
}

TEST_CASE("hit test widens with the per-level slack allowance")
{
	auto specs = from_text("[tiny]\n"
	                       "id = 7\n"
	                       "expr = x0^2 + x1^2\n"
	                       "box = -1:1 -1:1\n"
	                       "min = 0\n"
	                       "minimizers = (0, 0)\n"
	                       "tol = 1/1000\n"
	                       "slack = 3\n");
	const BenchmarkSpec &b = specs[0];
	/* max(1/1000, 3 * 10^-eta) */
	CHECK(grid_hit(b, frac(29, 10), 0));
	CHECK(!grid_hit(b, frac(31, 10), 0));
	CHECK(grid_hit(b, frac(-29, 100), 1));
	CHECK(!grid_hit(b, frac(-31, 100), 1));
	CHECK(grid_hit(b, frac(1, 1000), 4)); /* tolerance floor */
	CHECK(!grid_hit(b, frac(2, 1000), 4));
}

TEST_CASE("catalog loader rejects malformed input")
{
	const std::string ok = "[a]\nid = 1\nexpr = x0 + x1\n"
	                       "box = -1:1 -1:1\nmin = -2\n"
	                       "minimizers = (-1, -1)\n";
	/* sanity: the base record parses */
	CHECK(from_text(ok).size() == 1);

	auto rejects = [](const std::string &text, const char *what) {
		CAPTURE(what);
		CAPTURE(text);
		CHECK_THROWS_AS((void)from_text(text), BenchError);
	};
	rejects("id = 1\n", "key before any section");
	rejects("[a]\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "missing id");
	rejects("[a]\nid = 1\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "missing expr");
	rejects("[a]\nid = 1\nexpr = x0\nmin = 0\nminimizers = (0, 0)\n",
	        "missing box");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\n"
	        "minimizers = (0, 0)\n",
	        "missing min");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n",
	        "missing minimizers");
	rejects(ok + "[b]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	             "minimizers = (0, 0)\n",
	        "duplicate id");
	rejects(ok + "[a]\nid = 2\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	             "minimizers = (0, 0)\n",
	        "duplicate name");
	rejects("[a]\nid = 0\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "nonpositive id");
	rejects("[a]\nid = 1\nexpr = x0 +\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "expression syntax error");
	rejects("[a]\nid = 1\nexpr = x2\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "variable beyond the two axes");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "one-axis box");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\n",
	        "three-axis box");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 5)\n",
	        "minimizer outside the box");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0, 0)\n",
	        "three-coordinate minimizer");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\ntags = shiny\n",
	        "unknown tag");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\ncolour = red\n",
	        "unknown key");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\ntags = as-printed-discrepancy\n",
	        "discrepancy tag without a note");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 1/0\n"
	        "minimizers = (0, 0)\n",
	        "zero denominator");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = zero\n"
	        "minimizers = (0, 0)\n",
	        "malformed rational");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\nlisted = maybe\n",
	        "bad listed value");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\ntol = -1/2\n",
	        "negative tolerance");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0, 0)\nslack = -1\n",
	        "negative slack");
	rejects("[a]\nid = 1\nexpr = x0\nbox = -1:1 -1:1\nmin = 0\n"
	        "minimizers = (0 0)\n",
	        "minimizer missing comma");
	rejects("[]\nid = 1\n", "empty section name");
}

TEST_CASE("fraction and decimal literals in catalog fields")
{
	auto specs = from_text("[q]\n"
	                       "id = 9\n"
	                       "expr = (x0 - 1/4)^2 + x1^2\n"
	                       "box = -1/2:3/4 -0.25:0.25\n"
	                       "min = 0\n"
	                       "minimizers = (0.25, 0)\n"
	                       "tol = 1/100000\n");
	REQUIRE(specs.size() == 1);
	CHECK(specs[0].box.bounds[0].first == frac(-1, 2));
	CHECK(specs[0].box.bounds[0].second == frac(3, 4));
	CHECK(specs[0].box.bounds[1].first == frac(-1, 4));
	CHECK(specs[0].minimizers[0][0] == frac(1, 4));
	CHECK(specs[0].tolerance == frac(1, 100000));
	CHECK(evaluate(specs[0].objective, specs[0].minimizers[0]) == 0);
}
