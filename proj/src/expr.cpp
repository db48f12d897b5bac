#include "cegio/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace cegio {

struct Expr::Node {
	ExprKind kind;
	Rat value;
	int var_index = -1;
	long exponent = 0;
	std::vector<Expr> kids;
};

/* --- construction ------------------------------------------------- */

static std::shared_ptr<const Expr::Node> share(Expr::Node n)
{
	return std::make_shared<const Expr::Node>(std::move(n));
}

Expr Expr::constant(Rat v)
{
	Node n;
	n.kind = ExprKind::Const;
	n.value = std::move(v);
	return Expr(share(std::move(n)));
}

Expr Expr::pi()
{
	Node n;
	n.kind = ExprKind::Pi;
	return Expr(share(std::move(n)));
}

Expr Expr::var(int index)
{
	if (index < 0)
		throw std::invalid_argument("variable index must be >= 0");
	Node n;
	n.kind = ExprKind::Var;
	n.var_index = index;
	return Expr(share(std::move(n)));
}

Expr Expr::neg(Expr a)
{
	Node n;
	n.kind = ExprKind::Neg;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

Expr Expr::add(Expr a, Expr b)
{
	Node n;
	n.kind = ExprKind::Add;
	n.kids.push_back(std::move(a));
	n.kids.push_back(std::move(b));
	return Expr(share(std::move(n)));
}

Expr Expr::sub(Expr a, Expr b)
{
	Node n;
	n.kind = ExprKind::Sub;
	n.kids.push_back(std::move(a));
	n.kids.push_back(std::move(b));
	return Expr(share(std::move(n)));
}

Expr Expr::mul(Expr a, Expr b)
{
	Node n;
	n.kind = ExprKind::Mul;
	n.kids.push_back(std::move(a));
	n.kids.push_back(std::move(b));
	return Expr(share(std::move(n)));
}

Expr Expr::div(Expr a, Expr b)
{
	if (b.kind() == ExprKind::Const && sgn(b.value()) == 0)
		throw std::invalid_argument("division by constant zero");
	Node n;
	n.kind = ExprKind::Div;
	n.kids.push_back(std::move(a));
	n.kids.push_back(std::move(b));
	return Expr(share(std::move(n)));
}

Expr Expr::pow_int(Expr base, long exponent)
{
	if (exponent < 0)
		throw std::invalid_argument("integer exponent must be >= 0");
	Node n;
	n.kind = ExprKind::PowInt;
	n.exponent = exponent;
	n.kids.push_back(std::move(base));
	return Expr(share(std::move(n)));
}

static Expr mk1(ExprKind k, Expr a)
{
	switch (k) {
	case ExprKind::Abs: return Expr::abs(std::move(a));
	case ExprKind::Floor: return Expr::floor(std::move(a));
	case ExprKind::Sqrt: return Expr::sqrt(std::move(a));
	case ExprKind::Sin: return Expr::sin(std::move(a));
	case ExprKind::Cos: return Expr::cos(std::move(a));
	case ExprKind::Exp: return Expr::exp(std::move(a));
	default: throw std::logic_error("mk1: not a unary function kind");
	}
}

Expr Expr::abs(Expr a)
{
	Node n;
	n.kind = ExprKind::Abs;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

Expr Expr::floor(Expr a)
{
	Node n;
	n.kind = ExprKind::Floor;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

Expr Expr::sqrt(Expr a)
{
	Node n;
	n.kind = ExprKind::Sqrt;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

Expr Expr::sin(Expr a)
{
	Node n;
	n.kind = ExprKind::Sin;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

Expr Expr::cos(Expr a)
{
	Node n;
	n.kind = ExprKind::Cos;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

Expr Expr::exp(Expr a)
{
	Node n;
	n.kind = ExprKind::Exp;
	n.kids.push_back(std::move(a));
	return Expr(share(std::move(n)));
}

ExprKind Expr::kind() const { return n->kind; }

const Rat &Expr::value() const
{
	if (n->kind != ExprKind::Const)
		throw std::logic_error("value() on non-constant node");
	return n->value;
}

int Expr::var_index() const
{
	if (n->kind != ExprKind::Var)
		throw std::logic_error("var_index() on non-variable node");
	return n->var_index;
}

long Expr::exponent() const
{
	if (n->kind != ExprKind::PowInt)
		throw std::logic_error("exponent() on non-power node");
	return n->exponent;
}

size_t Expr::arity() const { return n->kids.size(); }

const Expr &Expr::child(size_t i) const { return n->kids.at(i); }

bool Expr::same_tree(const Expr &other) const
{
	if (n == other.n)
		return true;
	if (n->kind != other.n->kind || n->kids.size() != other.n->kids.size())
		return false;
	switch (n->kind) {
	case ExprKind::Const:
		if (n->value != other.n->value)
			return false;
		break;
	case ExprKind::Var:
		if (n->var_index != other.n->var_index)
			return false;
		break;
	case ExprKind::PowInt:
		if (n->exponent != other.n->exponent)
			return false;
		break;
	default:
		break;
	}
	for (size_t i = 0; i < n->kids.size(); i++)
		if (!n->kids[i].same_tree(other.n->kids[i]))
			return false;
	return true;
}

/* --- evaluation --------------------------------------------------- */

const Rat &quantized_pi()
{
	static const Rat v = quantize_e12(M_PI);
	return v;
}

Rat apply_transcendental(ExprKind k, const Rat &arg)
{
	if (k == ExprKind::Sqrt && sgn(arg) < 0)
		throw EvalError("sqrt of a negative value");
	double a = to_nearest_double(arg);
	if (!std::isfinite(a))
		throw EvalError("transcendental argument out of double range");
	double r;
	switch (k) {
	case ExprKind::Sqrt: r = std::sqrt(a < 0 ? 0.0 : a); break;
	case ExprKind::Sin: r = std::sin(a); break;
	case ExprKind::Cos: r = std::cos(a); break;
	case ExprKind::Exp: r = std::exp(a); break;
	default: throw std::logic_error("apply_transcendental: bad kind");
	}
	if (!std::isfinite(r))
		throw EvalError("transcendental result out of double range");
	return quantize_e12(r);
}

Rat evaluate(const Expr &e, std::span<const Rat> env)
{
	switch (e.kind()) {
	case ExprKind::Const:
		return e.value();
	case ExprKind::Pi:
		return quantized_pi();
	case ExprKind::Var: {
		int i = e.var_index();
		if ((size_t)i >= env.size())
			throw EvalError("unbound variable x" + std::to_string(i));
		return env[i];
	}
	case ExprKind::Neg:
		return -evaluate(e.child(0), env);
	case ExprKind::Add:
		return evaluate(e.child(0), env) + evaluate(e.child(1), env);
	case ExprKind::Sub:
		return evaluate(e.child(0), env) - evaluate(e.child(1), env);
	case ExprKind::Mul:
		return evaluate(e.child(0), env) * evaluate(e.child(1), env);
	case ExprKind::Div: {
		Rat num = evaluate(e.child(0), env);
		Rat den = evaluate(e.child(1), env);
		if (sgn(den) == 0)
			throw EvalError("division by zero");
		return num / den;
	}
	case ExprKind::PowInt: {
		Rat b = evaluate(e.child(0), env);
		unsigned long k = (unsigned long)e.exponent();
		Int num, den;
		mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
		mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
		Rat r(num, den);
		r.canonicalize();
		return r;
	}
	case ExprKind::Abs:
		return abs(evaluate(e.child(0), env));
	case ExprKind::Floor:
		return Rat(floor_rat(evaluate(e.child(0), env)));
	case ExprKind::Sqrt:
	case ExprKind::Sin:
	case ExprKind::Cos:
	case ExprKind::Exp:
		return apply_transcendental(e.kind(), evaluate(e.child(0), env));
	}
	throw std::logic_error("evaluate: unknown node kind");
}

/* --- variable accounting ------------------------------------------ */

static void collect_vars(const Expr &e, std::set<int> &out)
{
	if (e.kind() == ExprKind::Var)
		out.insert(e.var_index());
	for (size_t i = 0; i < e.arity(); i++)
		collect_vars(e.child(i), out);
}

std::vector<int> free_vars(const Expr &e)
{
	std::set<int> s;
	collect_vars(e, s);
	return {s.begin(), s.end()};
}

int free_var_count(const Expr &e)
{
	std::vector<int> v = free_vars(e);
	return v.empty() ? 0 : v.back() + 1;
}

std::vector<std::string> validate(const Expr &e)
{
	std::vector<std::string> warnings;
	std::vector<int> v = free_vars(e);
	if (!v.empty() && (int)v.size() != v.back() + 1) {
		std::string used;
		for (int i : v)
			used += (used.empty() ? "x" : ", x") + std::to_string(i);
		warnings.push_back("variable indices are not contiguous from x0 "
		                   "(uses " + used + ")");
	}
	return warnings;
}

/* --- parser -------------------------------------------------------- */

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LPar, RPar, End };

struct Token {
	Tok kind;
	std::string text;
	size_t pos;
};

struct Lexer {
	std::string_view s;
	size_t i = 0;

	Token next()
	{
		while (i < s.size() && isspace((unsigned char)s[i]))
			i++;
		if (i >= s.size() || s[i] == '#')
			return {Tok::End, "", i};
		size_t start = i;
		char c = s[i];
		switch (c) {
		case '+': i++; return {Tok::Plus, "+", start};
		case '-': i++; return {Tok::Minus, "-", start};
		case '*': i++; return {Tok::Star, "*", start};
		case '/': i++; return {Tok::Slash, "/", start};
		case '^': i++; return {Tok::Caret, "^", start};
		case '(': i++; return {Tok::LPar, "(", start};
		case ')': i++; return {Tok::RPar, ")", start};
		default: break;
		}
		if (isdigit((unsigned char)c)) {
			while (i < s.size() && isdigit((unsigned char)s[i]))
				i++;
			if (i < s.size() && s[i] == '.') {
				i++;
				if (i >= s.size() || !isdigit((unsigned char)s[i]))
					throw ParseError("digits required after decimal point",
					                 i);
				while (i < s.size() && isdigit((unsigned char)s[i]))
					i++;
			}
			return {Tok::Num, std::string(s.substr(start, i - start)),
			        start};
		}
		if (isalpha((unsigned char)c) || c == '_') {
			while (i < s.size() &&
			       (isalnum((unsigned char)s[i]) || s[i] == '_'))
				i++;
			return {Tok::Ident, std::string(s.substr(start, i - start)),
			        start};
		}
		throw ParseError(std::string("unexpected character '") + c + "'",
		                 start);
	}
};

struct Parser {
	Lexer lex;
	Token tok;

	explicit Parser(std::string_view text) : lex{text} { tok = lex.next(); }

	void advance() { tok = lex.next(); }

	void expect(Tok k, const char *what)
	{
		if (tok.kind != k)
			throw ParseError(std::string("expected ") + what, tok.pos);
		advance();
	}

	Expr parse_expr()
	{
		Expr e = parse_term();
		while (tok.kind == Tok::Plus || tok.kind == Tok::Minus) {
			bool plus = tok.kind == Tok::Plus;
			advance();
			Expr rhs = parse_term();
			e = plus ? Expr::add(std::move(e), std::move(rhs))
			         : Expr::sub(std::move(e), std::move(rhs));
		}
		return e;
	}

	Expr parse_term()
	{
		Expr e = parse_factor();
		while (tok.kind == Tok::Star || tok.kind == Tok::Slash) {
			bool star = tok.kind == Tok::Star;
			size_t pos = tok.pos;
			advance();
			Expr rhs = parse_factor();
			if (star) {
				e = Expr::mul(std::move(e), std::move(rhs));
			} else {
				if (rhs.kind() == ExprKind::Const &&
				    sgn(rhs.value()) == 0)
					throw ParseError("division by constant zero", pos);
				e = Expr::div(std::move(e), std::move(rhs));
			}
		}
		return e;
	}

	Expr parse_factor()
	{
		if (tok.kind == Tok::Minus) {
			advance();
			return Expr::neg(parse_factor());
		}
		return parse_power();
	}

	Expr parse_power()
	{
		Expr base = parse_atom();
		if (tok.kind != Tok::Caret)
			return base;
		size_t pos = tok.pos;
		advance();
		if (tok.kind != Tok::Num || tok.text.find('.') != std::string::npos)
			throw ParseError("exponent must be a nonnegative integer "
			                 "literal", tok.pos);
		long e;
		try {
			e = std::stol(tok.text);
		} catch (const std::out_of_range &) {
			throw ParseError("exponent out of range", tok.pos);
		}
		advance();
		if (tok.kind == Tok::Caret)
			throw ParseError("chained '^' is ambiguous; parenthesize",
			                 pos);
		return Expr::pow_int(std::move(base), e);
	}

	Expr parse_atom()
	{
		switch (tok.kind) {
		case Tok::Num: {
			Rat v = rat_from_decimal(tok.text);
			advance();
			return Expr::constant(std::move(v));
		}
		case Tok::LPar: {
			advance();
			Expr e = parse_expr();
			expect(Tok::RPar, "')'");
			return e;
		}
		case Tok::Ident: {
			std::string name = tok.text;
			size_t pos = tok.pos;
			advance();
			if (name == "pi")
				return Expr::pi();
			if (name.size() >= 2 && name[0] == 'x' &&
			    std::all_of(name.begin() + 1, name.end(), [](char c) {
				    return isdigit((unsigned char)c);
			    })) {
				if (name.size() > 7)
					throw ParseError("variable index out of range",
					                 pos);
				return Expr::var(std::stoi(name.substr(1)));
			}
			ExprKind k;
			if (name == "abs")
				k = ExprKind::Abs;
			else if (name == "floor")
				k = ExprKind::Floor;
			else if (name == "sqrt")
				k = ExprKind::Sqrt;
			else if (name == "sin")
				k = ExprKind::Sin;
			else if (name == "cos")
				k = ExprKind::Cos;
			else if (name == "exp")
				k = ExprKind::Exp;
			else
				throw ParseError("unknown identifier '" + name + "'",
				                 pos);
			expect(Tok::LPar, "'(' after function name");
			Expr arg = parse_expr();
			expect(Tok::RPar, "')'");
			return mk1(k, std::move(arg));
		}
		default:
			throw ParseError("expected a number, variable, function "
			                 "call or parenthesized expression",
			                 tok.pos);
		}
	}
};

} // namespace

Expr parse(std::string_view text)
{
	Parser p(text);
	Expr e = p.parse_expr();
	if (p.tok.kind != Tok::End)
		throw ParseError("unexpected trailing input", p.tok.pos);
	return e;
}

/* --- printer ------------------------------------------------------- */

namespace {

int prec_of(const Expr &e)
{
	switch (e.kind()) {
	case ExprKind::Add:
	case ExprKind::Sub: return 1;
	case ExprKind::Mul:
	case ExprKind::Div: return 2;
	case ExprKind::Neg: return 3;
	case ExprKind::PowInt: return 4;
	default: return 5; /* atoms and function calls */
	}
}

std::string print_const(const Rat &v)
{
	unsigned long frac;
	if (has_finite_decimal(v, frac))
		return rat_exact_decimal(v);
	return "(" + rat_string(v) + ")";
}

void render(const Expr &e, std::string &out)
{
	auto wrap = [&out](const Expr &c, bool parens) {
		if (parens)
			out += "(";
		render(c, out);
		if (parens)
			out += ")";
	};
	int p = prec_of(e);
	switch (e.kind()) {
	case ExprKind::Const:
		out += print_const(e.value());
		return;
	case ExprKind::Pi:
		out += "pi";
		return;
	case ExprKind::Var:
		out += "x" + std::to_string(e.var_index());
		return;
	case ExprKind::Neg:
		out += "-";
		wrap(e.child(0), prec_of(e.child(0)) < p);
		return;
	case ExprKind::Add:
	case ExprKind::Sub:
	case ExprKind::Mul:
	case ExprKind::Div: {
		const char *op = e.kind() == ExprKind::Add   ? " + "
		                 : e.kind() == ExprKind::Sub ? " - "
		                 : e.kind() == ExprKind::Mul ? "*"
		                                             : "/";
		wrap(e.child(0), prec_of(e.child(0)) < p);
		out += op;
		wrap(e.child(1), prec_of(e.child(1)) <= p);
		return;
	}
	case ExprKind::PowInt:
		wrap(e.child(0), prec_of(e.child(0)) < 5);
		out += "^" + std::to_string(e.exponent());
		return;
	case ExprKind::Abs:
	case ExprKind::Floor:
	case ExprKind::Sqrt:
	case ExprKind::Sin:
	case ExprKind::Cos:
	case ExprKind::Exp: {
		const char *name = e.kind() == ExprKind::Abs     ? "abs"
		                   : e.kind() == ExprKind::Floor ? "floor"
		                   : e.kind() == ExprKind::Sqrt  ? "sqrt"
		                   : e.kind() == ExprKind::Sin   ? "sin"
		                   : e.kind() == ExprKind::Cos   ? "cos"
		                                                 : "exp";
		out += name;
		out += "(";
		render(e.child(0), out);
		out += ")";
		return;
	}
	}
}

} // namespace

std::string print(const Expr &e)
{
	std::string out;
	render(e, out);
	return out;
}

} // namespace cegio
