#include "cegio/benchlib.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace cegio {

namespace detail {
/* generated from data/benchmarks.txt at configure time */
const char *bench_catalog_text();
} // namespace detail

/* --- tag tokens ----------------------------------------------------- */

namespace {

constexpr struct {
	unsigned bit;
	const char *token;
} tag_table[] = {
	{ tag_convex, "convex" },
	{ tag_semidefinite_positive, "semidefinite-positive" },
	{ tag_multimodal, "multimodal" },
	{ tag_as_printed_discrepancy, "as-printed-discrepancy" },
};

} // namespace

unsigned bench_tag_from_name(std::string_view token)
{
	for (const auto &t : tag_table)
		if (token == t.token)
			return t.bit;
	throw BenchError("unknown benchmark tag '" + std::string(token) + "'");
}

std::string bench_tag_names(unsigned tags)
{
	std::string out;
	for (const auto &t : tag_table) {
		if (!(tags & t.bit))
			continue;
		if (!out.empty())
			out += ' ';
		out += t.token;
	}
	return out;
}

/* --- catalog parsing ------------------------------------------------ */

namespace {

std::string trim(std::string s)
{
	size_t a = s.find_first_not_of(" \t\r\n");
	if (a == std::string::npos)
		return "";
	size_t b = s.find_last_not_of(" \t\r\n");
	return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string &s)
{
	std::vector<std::string> out;
	std::istringstream in(s);
	std::string tok;
	while (in >> tok)
		out.push_back(tok);
	return out;
}

/* "n", "n/d", or a decimal literal */
Rat parse_rat(const std::string &text)
{
	size_t slash = text.find('/');
	if (slash == std::string::npos)
		return rat_from_decimal(text);
	Int num(text.substr(0, slash));
	Int den(text.substr(slash + 1));
	if (den == 0)
		throw std::invalid_argument("zero denominator");
	return frac(num, den);
}

/* "(a, b) (c, d)" -> list of points */
std::vector<std::vector<Rat>> parse_points(const std::string &text)
{
	std::vector<std::vector<Rat>> out;
	size_t i = 0;
	while (i < text.size()) {
		if (isspace((unsigned char)text[i])) {
			i++;
			continue;
		}
		if (text[i] != '(')
			throw std::invalid_argument("expected '('");
		size_t close = text.find(')', i);
		if (close == std::string::npos)
			throw std::invalid_argument("unbalanced '('");
		std::string body = text.substr(i + 1, close - i - 1);
		std::vector<Rat> point;
		size_t start = 0;
		while (true) {
			size_t comma = body.find(',', start);
			std::string coord =
			    trim(comma == std::string::npos
			             ? body.substr(start)
			             : body.substr(start, comma - start));
			if (coord.empty())
				throw std::invalid_argument("empty coordinate");
			point.push_back(parse_rat(coord));
			if (comma == std::string::npos)
				break;
			start = comma + 1;
		}
		out.push_back(std::move(point));
		i = close + 1;
	}
	return out;
}

/* "lo:hi lo:hi" -> box */
BoxDomain parse_box(const std::string &text)
{
	std::vector<std::pair<Rat, Rat>> bounds;
	for (const std::string &axis : split_ws(text)) {
		size_t colon = axis.find(':');
		if (colon == std::string::npos)
			throw std::invalid_argument("expected 'lo:hi'");
		bounds.emplace_back(parse_rat(axis.substr(0, colon)),
		                    parse_rat(axis.substr(colon + 1)));
	}
	return BoxDomain(std::move(bounds));
}

struct raw_record {
	std::string name;
	size_t lineno = 0; /* of the [section] line */
	BenchmarkSpec spec;
	bool saw_id = false, saw_expr = false, saw_box = false;
	bool saw_min = false, saw_minimizers = false;
};

[[noreturn]] void fail(std::string_view origin, size_t lineno,
                       const std::string &msg)
{
	throw BenchError(std::string(origin) + ":" + std::to_string(lineno) +
	                 ": " + msg);
}

BenchmarkSpec finish_record(std::string_view origin, raw_record &r)
{
	BenchmarkSpec &s = r.spec;
	s.name = r.name;
	if (!r.saw_id)
		fail(origin, r.lineno, "[" + r.name + "] has no id");
	if (!r.saw_expr)
		fail(origin, r.lineno, "[" + r.name + "] has no expr");
	if (!r.saw_box)
		fail(origin, r.lineno, "[" + r.name + "] has no box");
	if (!r.saw_min)
		fail(origin, r.lineno, "[" + r.name + "] has no min");
	if (!r.saw_minimizers || s.minimizers.empty())
		fail(origin, r.lineno, "[" + r.name + "] has no minimizers");
	if (s.box.dim() != 2)
		fail(origin, r.lineno,
		     "[" + r.name + "] box must have exactly two axes");
	if (free_var_count(s.objective) > 2)
		fail(origin, r.lineno,
		     "[" + r.name + "] expression uses variables beyond x0, x1");
	for (const auto &m : s.minimizers) {
		if (m.size() != 2)
			fail(origin, r.lineno,
			     "[" + r.name + "] minimizer is not a point of "
			     "two coordinates");
		if (!s.box.contains(m))
			fail(origin, r.lineno,
			     "[" + r.name + "] minimizer lies outside the box");
	}
	if (s.has(tag_as_printed_discrepancy) && s.note.empty())
		fail(origin, r.lineno,
		     "[" + r.name + "] is tagged as-printed-discrepancy but "
		     "carries no note");
	return std::move(s);
}

} // namespace

std::vector<BenchmarkSpec> load_catalog(std::istream &in,
                                        std::string_view origin)
{
	std::vector<BenchmarkSpec> out;
	raw_record cur;
	bool open = false;
	auto flush = [&] {
		if (open)
			out.push_back(finish_record(origin, cur));
		cur = raw_record{};
	};
	std::string line;
	size_t lineno = 0;
	while (std::getline(in, line)) {
		lineno++;
		std::string t = trim(line);
		if (t.empty() || t[0] == '#' || t[0] == ';')
			continue;
		if (t.front() == '[' && t.back() == ']') {
			flush();
			open = true;
			cur.name = trim(t.substr(1, t.size() - 2));
			cur.lineno = lineno;
			cur.spec.tolerance = frac(1, 2000);
			if (cur.name.empty())
				fail(origin, lineno, "empty section name");
			continue;
		}
		size_t eq = t.find('=');
		if (eq == std::string::npos || !open)
			fail(origin, lineno,
			     "expected 'key = value' inside a [section]");
		std::string key = trim(t.substr(0, eq));
		std::string val = trim(t.substr(eq + 1));
		BenchmarkSpec &s = cur.spec;
		try {
			if (key == "id") {
				s.id = std::stoi(val);
				if (s.id <= 0)
					throw std::invalid_argument(
					    "id must be positive");
				cur.saw_id = true;
			} else if (key == "expr") {
				s.expr_text = val;
				s.objective = parse(val);
				cur.saw_expr = true;
			} else if (key == "box") {
				s.box = parse_box(val);
				cur.saw_box = true;
			} else if (key == "min") {
				s.known_min = parse_rat(val);
				cur.saw_min = true;
			} else if (key == "minimizers") {
				s.minimizers = parse_points(val);
				cur.saw_minimizers = true;
			} else if (key == "tol") {
				s.tolerance = parse_rat(val);
				if (s.tolerance < 0)
					throw std::invalid_argument(
					    "tolerance must be nonnegative");
			} else if (key == "slack") {
				s.slack = parse_rat(val);
				if (s.slack < 0)
					throw std::invalid_argument(
					    "slack must be nonnegative");
			} else if (key == "tags") {
				s.tags = 0;
				for (const std::string &tok : split_ws(val))
					s.tags |= bench_tag_from_name(tok);
			} else if (key == "note") {
				s.note = val;
			} else if (key == "listed") {
				if (val == "yes")
					s.listed = true;
				else if (val == "no")
					s.listed = false;
				else
					throw std::invalid_argument(
					    "expected yes or no");
			} else {
				throw std::invalid_argument("unknown key '" +
				                            key + "'");
			}
		} catch (const BenchError &) {
			throw;
		} catch (const std::exception &e) {
			fail(origin, lineno,
			     key + " = " + val + ": " + e.what());
		}
	}
	flush();

	std::stable_sort(out.begin(), out.end(),
	                 [](const BenchmarkSpec &a, const BenchmarkSpec &b) {
		                 return a.id < b.id;
	                 });
	for (size_t i = 1; i < out.size(); i++)
		if (out[i].id == out[i - 1].id)
			throw BenchError(std::string(origin) +
			                 ": duplicate id " +
			                 std::to_string(out[i].id));
	for (size_t i = 0; i < out.size(); i++)
		for (size_t j = i + 1; j < out.size(); j++)
			if (out[i].name == out[j].name)
				throw BenchError(std::string(origin) +
				                 ": duplicate name '" +
				                 out[i].name + "'");
	return out;
}

std::vector<BenchmarkSpec> load_catalog_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw BenchError("cannot open benchmark catalog '" + path +
		                 "'");
	return load_catalog(in, path);
}

/* --- compiled-in registry ------------------------------------------- */

const std::vector<BenchmarkSpec> &benchmark_registry()
{
	static const std::vector<BenchmarkSpec> reg = [] {
		std::istringstream in(detail::bench_catalog_text());
		return load_catalog(in, "<built-in catalog>");
	}();
	return reg;
}

const BenchmarkSpec &benchmark(int id)
{
	for (const BenchmarkSpec &s : benchmark_registry())
		if (s.id == id)
			return s;
	throw BenchError("unknown benchmark id " + std::to_string(id));
}

const BenchmarkSpec &benchmark(std::string_view name)
{
	for (const BenchmarkSpec &s : benchmark_registry())
		if (s.name == name)
			return s;
	throw BenchError("unknown benchmark '" + std::string(name) + "'");
}

std::vector<const BenchmarkSpec *> benchmarks(unsigned tags)
{
	std::vector<const BenchmarkSpec *> out;
	for (const BenchmarkSpec &s : benchmark_registry())
		if (s.listed && s.has(tags))
			out.push_back(&s);
	return out;
}

bool grid_hit(const BenchmarkSpec &b, const Rat &value, int eta)
{
	Rat allow = b.slack * PrecisionLevel::at(eta).pitch();
	if (allow < b.tolerance)
		allow = b.tolerance;
	return abs(value - b.known_min) <= allow;
}

} // namespace cegio
