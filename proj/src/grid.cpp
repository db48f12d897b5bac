#include "cegio/grid.hpp"

namespace cegio {

BoxDomain::BoxDomain(std::vector<std::pair<Rat, Rat>> b) : bounds(std::move(b))
{
	for (size_t i = 0; i < bounds.size(); i++)
		if (bounds[i].first > bounds[i].second)
			throw GridError("box axis " + std::to_string(i) +
			                " has lo > hi");
}

BoxDomain BoxDomain::uniform(size_t n, const Rat &lo, const Rat &hi)
{
	std::vector<std::pair<Rat, Rat>> b(n, {lo, hi});
	return BoxDomain(std::move(b));
}

bool BoxDomain::contains(std::span<const Rat> x) const
{
	if (x.size() != bounds.size())
		return false;
	for (size_t i = 0; i < bounds.size(); i++)
		if (x[i] < bounds[i].first || x[i] > bounds[i].second)
			return false;
	return true;
}

std::vector<Rat> BoxDomain::center() const
{
	std::vector<Rat> c;
	c.reserve(bounds.size());
	for (const auto &[lo, hi] : bounds)
		c.push_back((lo + hi) / 2);
	return c;
}

PrecisionLevel PrecisionLevel::at(int k)
{
	if (k < 0)
		throw GridError("precision exponent must be >= 0");
	PrecisionLevel l;
	l.k = k;
	mpz_ui_pow_ui(l.p.get_mpz_t(), 10, (unsigned long)k);
	return l;
}

Int GridSpec::volume() const
{
	Int v = 1;
	for (const auto &[lo, hi] : krange)
		v *= int_of(hi) - int_of(lo) + 1;
	return v;
}

bool GridSpec::in_range(std::span<const long long> k) const
{
	if (k.size() != krange.size())
		return false;
	for (size_t i = 0; i < k.size(); i++)
		if (k[i] < krange[i].first || k[i] > krange[i].second)
			return false;
	return true;
}

GridSpec make_grid(const BoxDomain &box, const PrecisionLevel &level)
{
	GridSpec g;
	g.box = box;
	g.level = level;
	g.krange.reserve(box.dim());
	for (size_t i = 0; i < box.dim(); i++) {
		Int klo = ceil_rat(box.bounds[i].first * level.p);
		Int khi = floor_rat(box.bounds[i].second * level.p);
		if (klo > khi)
			throw GridError("axis " + std::to_string(i) +
			                " contains no grid point at pitch 1/" +
			                level.p.get_str());
		if (!klo.fits_slong_p() || !khi.fits_slong_p())
			throw GridError("grid coordinates overflow at pitch 1/" +
			                level.p.get_str());
		g.krange.emplace_back(klo.get_si(), khi.get_si());
	}
	return g;
}

std::vector<Rat> to_point(std::span<const long long> k,
                          const PrecisionLevel &level)
{
	std::vector<Rat> x;
	x.reserve(k.size());
	for (long long ki : k) {
		Rat q(int_of(ki), level.p);
		q.canonicalize();
		x.push_back(std::move(q));
	}
	return x;
}

BoxDomain shrink_box(const BoxDomain &original, std::span<const Rat> center,
                     const Rat &radius)
{
	if (sgn(radius) <= 0)
		throw GridError("shrink radius must be positive");
	if (!original.contains(center))
		throw GridError("shrink center lies outside the box");
	std::vector<std::pair<Rat, Rat>> b;
	b.reserve(original.dim());
	for (size_t i = 0; i < original.dim(); i++) {
		Rat lo = center[i] - radius;
		Rat hi = center[i] + radius;
		if (lo < original.bounds[i].first)
			lo = original.bounds[i].first;
		if (hi > original.bounds[i].second)
			hi = original.bounds[i].second;
		b.emplace_back(std::move(lo), std::move(hi));
	}
	return BoxDomain(std::move(b));
}

Candidate make_candidate(const Expr &f, std::vector<long long> k,
                         const PrecisionLevel &level)
{
	Candidate c;
	c.k = std::move(k);
	c.level = level;
	c.x = to_point(c.k, level);
	c.value = evaluate(f, c.x);
	return c;
}

} // namespace cegio
