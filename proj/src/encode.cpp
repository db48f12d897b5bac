#include "cegio/encode.hpp"

namespace cegio {

void validate_query(const Query &q)
{
	int need = free_var_count(q.objective);
	if ((size_t)need > q.grid.dim())
		throw GridError("objective uses x" + std::to_string(need - 1) +
		                " but the grid has only " +
		                std::to_string(q.grid.dim()) + " axes");
}

namespace {

bool is_transcendental(ExprKind k)
{
	return k == ExprKind::Sqrt || k == ExprKind::Sin ||
	       k == ExprKind::Cos || k == ExprKind::Exp;
}

/* degree of e viewed as a function of the single variable `var`:
 * 0 = closed, 1 = affine, 2 = anything else */
int affine_degree(const Expr &e, int var)
{
	if (free_vars(e).empty())
		return 0;
	switch (e.kind()) {
	case ExprKind::Var:
		return e.var_index() == var ? 1 : 2;
	case ExprKind::Neg:
		return affine_degree(e.child(0), var);
	case ExprKind::Add:
	case ExprKind::Sub: {
		int a = affine_degree(e.child(0), var);
		int b = affine_degree(e.child(1), var);
		return std::max(a, b) > 1 ? 2 : std::max(a, b);
	}
	case ExprKind::Mul: {
		int a = affine_degree(e.child(0), var);
		int b = affine_degree(e.child(1), var);
		if (a + b <= 1)
			return a + b;
		return 2;
	}
	case ExprKind::Div: {
		int a = affine_degree(e.child(0), var);
		int b = affine_degree(e.child(1), var);
		return (b == 0 && a <= 1) ? a : 2;
	}
	case ExprKind::PowInt: {
		int a = affine_degree(e.child(0), var);
		if (a == 0)
			return 0;
		return (a == 1 && e.exponent() == 1) ? 1 : 2;
	}
	default:
		/* abs/floor/transcendental of a non-closed argument */
		return 2;
	}
}

/* SMT-LIB real literal for an exact rational */
std::string smt_rat(const Rat &q)
{
	Int num = q.get_num();
	bool neg = sgn(num) < 0;
	if (neg)
		num = -num;
	std::string body;
	if (q.get_den() == 1)
		body = num.get_str() + ".0";
	else
		body = "(/ " + num.get_str() + ".0 " + q.get_den().get_str() +
		       ".0)";
	return neg ? "(- " + body + ")" : body;
}

std::string smt_int(long long v)
{
	if (v < 0)
		return "(- " + std::to_string(-v) + ")";
	return std::to_string(v);
}

bool is_atom_term(const std::string &s)
{
	return s.find(' ') == std::string::npos;
}

struct emitter {
	const Query &q;
	const EncodeOptions &opts;
	int next_tmp = 0;

	std::string fresh() { return "t" + std::to_string(next_tmp++); }

	std::string emit(const Expr &e)
	{
		switch (e.kind()) {
		case ExprKind::Const:
			return smt_rat(e.value());
		case ExprKind::Pi:
			return smt_rat(quantized_pi());
		case ExprKind::Var: {
			int i = e.var_index();
			if ((size_t)i >= q.grid.dim())
				throw EncodeError("unbound variable x" +
				                  std::to_string(i));
			return "x" + std::to_string(i);
		}
		case ExprKind::Neg:
			return "(- " + emit(e.child(0)) + ")";
		case ExprKind::Add:
			return "(+ " + emit(e.child(0)) + " " + emit(e.child(1)) +
			       ")";
		case ExprKind::Sub:
			return "(- " + emit(e.child(0)) + " " + emit(e.child(1)) +
			       ")";
		case ExprKind::Mul:
			return "(* " + emit(e.child(0)) + " " + emit(e.child(1)) +
			       ")";
		case ExprKind::Div:
			return "(/ " + emit(e.child(0)) + " " + emit(e.child(1)) +
			       ")";
		case ExprKind::PowInt: {
			long k = e.exponent();
			if (k == 0)
				return "1.0";
			std::string b = emit(e.child(0));
			if (k == 1)
				return b;
			if (is_atom_term(b)) {
				std::string r = "(*";
				for (long i = 0; i < k; i++)
					r += " " + b;
				return r + ")";
			}
			std::string t = fresh();
			std::string r = "(let ((" + t + " " + b + ")) (*";
			for (long i = 0; i < k; i++)
				r += " " + t;
			return r + "))";
		}
		case ExprKind::Abs: {
			std::string b = emit(e.child(0));
			if (is_atom_term(b))
				return "(ite (< " + b + " 0.0) (- " + b + ") " + b +
				       ")";
			std::string t = fresh();
			return "(let ((" + t + " " + b + ")) (ite (< " + t +
			       " 0.0) (- " + t + ") " + t + "))";
		}
		case ExprKind::Floor:
			return "(to_real (to_int " + emit(e.child(0)) + "))";
		case ExprKind::Sqrt:
		case ExprKind::Sin:
		case ExprKind::Cos:
		case ExprKind::Exp: {
			std::vector<int> vars = free_vars(e.child(0));
			if (vars.empty()) {
				/* closed argument: fold the whole call */
				Rat v = evaluate(e, {});
				return smt_rat(v);
			}
			if (vars.size() > 1)
				throw EncodeError(
				    "transcendental argument mixes variables; "
				    "cannot encode exactly");
			auto table = tabulate(e, q.grid, opts.table_cap);
			std::string ks = "K" + std::to_string(vars[0]);
			/* nested ite keyed on the integer unknown; the last
			 * entry serves as the (unreachable) default */
			std::string out;
			size_t closes = 0;
			for (size_t i = 0; i + 1 < table.size(); i++) {
				out += "(ite (= " + ks + " " +
				       smt_int(table[i].first) + ") " +
				       smt_rat(table[i].second) + " ";
				closes++;
			}
			out += smt_rat(table.back().second);
			out += std::string(closes, ')');
			return out;
		}
		}
		throw EncodeError("unknown node kind");
	}
};

} // namespace

std::vector<std::pair<long long, Rat>>
tabulate(const Expr &node, const GridSpec &grid, long long cap)
{
	if (!is_transcendental(node.kind()))
		throw EncodeError("tabulate expects a transcendental call");
	const Expr &arg = node.child(0);
	std::vector<int> vars = free_vars(arg);
	if (vars.size() != 1)
		throw EncodeError("tabulate expects exactly one free variable");
	int var = vars[0];
	if ((size_t)var >= grid.dim())
		throw EncodeError("unbound variable x" + std::to_string(var));
	if (affine_degree(arg, var) > 1)
		throw EncodeError("transcendental argument is not affine in x" +
		                  std::to_string(var) +
		                  "; cannot encode exactly");
	auto [klo, khi] = grid.krange[var];
	long long count = khi - klo + 1;
	if (count > cap)
		throw EncodeError("tabulation needs " + std::to_string(count) +
		                  " entries, over the cap of " +
		                  std::to_string(cap));
	std::vector<std::pair<long long, Rat>> table;
	table.reserve((size_t)count);
	std::vector<Rat> env((size_t)var + 1, Rat(0));
	for (long long k = klo; k <= khi; k++) {
		env[(size_t)var] = frac(int_of(k), grid.level.p);
		table.emplace_back(k, evaluate(node, env));
	}
	return table;
}

SmtScript encode_query(const Query &q, const EncodeOptions &opts)
{
	validate_query(q);
	SmtScript s;
	std::string &t = s.text;
	t += "(set-option :produce-models true)\n";
	t += "(set-logic " + opts.logic + ")\n";
	std::string p_lit = q.grid.level.p.get_str() + ".0";
	for (size_t i = 0; i < q.grid.dim(); i++) {
		std::string ks = "K" + std::to_string(i);
		s.k_symbols.push_back(ks);
		auto [klo, khi] = q.grid.krange[i];
		t += "(declare-const " + ks + " Int)\n";
		t += "(assert (and (<= " + smt_int(klo) + " " + ks + ") (<= " +
		     ks + " " + smt_int(khi) + ")))\n";
	}
	std::vector<int> used = free_vars(q.objective);
	for (int i : used)
		t += "(define-fun x" + std::to_string(i) + " () Real (/ (to_real K" +
		     std::to_string(i) + ") " + p_lit + "))\n";
	emitter em{q, opts};
	t += "(define-fun obj () Real " + em.emit(q.objective) + ")\n";
	t += "(assert (< obj " + smt_rat(q.threshold) + "))\n";
	if (q.lower_cut)
		t += "(assert (<= " + smt_rat(*q.lower_cut) + " obj))\n";
	t += "(check-sat)\n";
	t += "(get-value (";
	for (size_t i = 0; i < s.k_symbols.size(); i++)
		t += (i ? " " : "") + s.k_symbols[i];
	t += "))\n";
	return s;
}

} // namespace cegio
