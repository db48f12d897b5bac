/* shared helpers for the test binaries */
#pragma once

#include "cegio/backend.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <utility>

namespace testsup {

using namespace cegio;

/* the configured default solver, when it is actually runnable here */
inline std::optional<SolverConfig> maybe_solver()
{
	const char *conf = std::getenv("CEGIO_SOLVERS");
	std::string path = conf ? conf : "";
	if (path.empty()) {
		auto fb = std::filesystem::path(__FILE__)
		              .parent_path()
		              .parent_path() /
		          "data" / "solvers.conf";
		if (std::filesystem::exists(fb))
			path = fb.string();
	}
	SolverConfig cfg;
	try {
		cfg = resolve_solver(path, "");
	} catch (const BackendError &) {
		return std::nullopt;
	}
	std::string probe =
	    "command -v '" + cfg.argv[0] + "' >/dev/null 2>&1";
	if (std::system(probe.c_str()) != 0)
		return std::nullopt;
	return cfg;
}

inline std::mt19937_64 &rng()
{
	static std::mt19937_64 r(0x5eedf00dULL);
	return r;
}

inline long long pick(long long n)
{
	return (long long)(rng()() % (unsigned long long)n);
}

inline GridSpec square(const Rat &lo, const Rat &hi, int k, size_t dim = 2)
{
	return make_grid(BoxDomain::uniform(dim, lo, hi),
	                 PrecisionLevel::at(k));
}

/* random expression over x0..x1; allow_error adds division and square
 * roots, whose exact evaluation can throw */
inline Expr random_expr(int depth, bool allow_error)
{
	if (depth == 0) {
		switch (pick(3)) {
		case 0:
			return Expr::var((int)pick(2));
		case 1:
			return Expr::constant(frac(pick(7) - 3, 1));
		default:
			return Expr::constant(frac(pick(21) - 10, 1 + pick(4)));
		}
	}
	auto sub = [&] { return random_expr(depth - 1, allow_error); };
	switch (pick(allow_error ? 9 : 7)) {
	case 0:
		return Expr::add(sub(), sub());
	case 1:
		return Expr::sub(sub(), sub());
	case 2:
		return Expr::mul(sub(), sub());
	case 3:
		return Expr::neg(sub());
	case 4:
		return Expr::pow_int(sub(), 1 + pick(3));
	case 5:
		return Expr::abs(sub());
	case 6:
		return Expr::sin(sub());
	case 7: {
		Expr num = sub();
		for (;;) {
			Expr den = sub();
			if (den.kind() != ExprKind::Const ||
			    sgn(den.value()) != 0)
				return Expr::div(num, den);
		}
	}
	default:
		return Expr::sqrt(sub());
	}
}

/* small 2-d grid with rational corners; may sit anywhere */
inline GridSpec random_grid()
{
	for (;;) {
		Rat a = frac(pick(25) - 12, 1 + pick(4));
		Rat b = frac(pick(25) - 12, 1 + pick(4));
		if (b < a)
			std::swap(a, b);
		int level = pick(4) == 0 ? 1 : 0;
		try {
			return square(a / 4, b / 4, level);
		} catch (const GridError &) {
			/* empty axis; draw again */
		}
	}
}

/* small box containing the origin, so every level's grid is nonempty */
inline BoxDomain random_box(size_t dim)
{
	std::vector<std::pair<Rat, Rat>> b;
	for (size_t i = 0; i < dim; i++)
		b.emplace_back(-frac(1 + pick(10), 4), frac(1 + pick(10), 4));
	return BoxDomain(std::move(b));
}

} // namespace testsup
