/* closed-form objective expressions: AST, parser, printer, exact evaluator */
#pragma once

#include "cegio/rational.hpp"

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cegio {

enum class ExprKind {
	Const,  /* nonnegative or programmatic rational literal */
	Pi,     /* pi, quantized to denominator 10^12 */
	Var,    /* x<i>, zero-based */
	Neg,
	Add,
	Sub,
	Mul,
	Div,
	PowInt, /* integer exponent >= 0 */
	Abs,
	Floor,
	Sqrt,
	Sin,
	Cos,
	Exp,
};

/* Immutable expression tree; cheap to copy (shared nodes). */
class Expr {
public:
	struct Node; /* defined in expr.cpp */

private:
	std::shared_ptr<const Node> n;
	explicit Expr(std::shared_ptr<const Node> p) : n(std::move(p)) {}

public:
	static Expr constant(Rat v);
	static Expr pi();
	static Expr var(int index);
	static Expr neg(Expr a);
	static Expr add(Expr a, Expr b);
	static Expr sub(Expr a, Expr b);
	static Expr mul(Expr a, Expr b);
	static Expr div(Expr a, Expr b); /* denominator must not be literal 0 */
	static Expr pow_int(Expr base, long exponent); /* exponent >= 0 */
	static Expr abs(Expr a);
	static Expr floor(Expr a);
	static Expr sqrt(Expr a);
	static Expr sin(Expr a);
	static Expr cos(Expr a);
	static Expr exp(Expr a);

	ExprKind kind() const;
	const Rat &value() const;   /* Const only */
	int var_index() const;      /* Var only */
	long exponent() const;      /* PowInt only */
	size_t arity() const;
	const Expr &child(size_t i) const;

	bool same_tree(const Expr &other) const;
};

struct ParseError : std::runtime_error {
	size_t pos; /* byte offset into the input */
	ParseError(const std::string &msg, size_t pos_)
	    : std::runtime_error(msg + " (at offset " + std::to_string(pos_) +
	                         ")"),
	      pos(pos_)
	{
	}
};

struct EvalError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Parse one infix expression.  Variables are x0, x1, ...; functions
 * abs, floor, sqrt, sin, cos, exp; constant pi; operators + - * / ^
 * (^ takes a nonnegative integer literal exponent); '#' starts a
 * comment running to the end of the input. */
Expr parse(std::string_view text);

/* Minimal-parenthesis rendering; parse(print(e)) reconstructs e for any
 * tree the parser can produce. */
std::string print(const Expr &e);

/* Exact evaluation over the rationals.  Transcendental calls evaluate
 * their argument exactly, convert to the nearest double, apply the
 * double-precision libm function and round the result to denominator
 * 10^12 (half away from zero).  Throws EvalError on division by zero,
 * sqrt of a negative, range overflow, or an unbound variable. */
Rat evaluate(const Expr &e, std::span<const Rat> env);

/* Shared transcendental semantics (argument already evaluated). */
Rat apply_transcendental(ExprKind k, const Rat &arg);

/* pi after quantization: 314159265359/100000000000 */
const Rat &quantized_pi();

/* 0 for a closed expression, else 1 + max variable index. */
int free_var_count(const Expr &e);

/* Sorted distinct variable indices appearing in e. */
std::vector<int> free_vars(const Expr &e);

/* Non-fatal diagnostics, e.g. variable indices not forming 0..n-1. */
std::vector<std::string> validate(const Expr &e);

} // namespace cegio
