#pragma once

#include <qasp/program.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qasp::syntax {

/// Non-ground term. Binary and unary-minus terms keep operands in args;
/// an interval l..u keeps its bounds in args[0], args[1].
struct Term {
	enum class Kind : std::uint8_t { Number, Function, Variable, Binary, Minus, Interval };
	Kind kind = Kind::Number;
	std::int64_t value = 0;
	std::string name; // function name or variable name
	char op = 0;      // '+', '-', '*' for Binary
	std::vector<Term> args;

	static Term number(std::int64_t v);
	static Term function(std::string name, std::vector<Term> args = {});
	static Term variable(std::string name);
	static Term binary(char op, Term lhs, Term rhs);

	bool is_ground() const;
	friend bool operator==(const Term&, const Term&) = default;
};

std::string to_string(const Term& t);

/// A body literal: a (possibly negated) atom, or a comparison `lhs op rhs`.
struct Lit {
	enum class Kind : std::uint8_t { Atom, Compare };
	Kind kind = Kind::Atom;
	bool negated = false;
	Term atom;
	CmpOp op = CmpOp::Eq;
	Term lhs, rhs;
};

struct Elem {
	Lit literal;
	std::vector<Lit> condition;
};

struct Agg {
	std::vector<Elem> elements;
	CmpOp op = CmpOp::Eq;
	Term bound;
};

struct SRule {
	HeadType type = HeadType::Constraint;
	std::vector<Elem> head;
	std::optional<std::pair<CmpOp, Term>> head_bound;
	std::vector<Lit> body;
	std::vector<Agg> aggregates;
	int line = 0;
};

struct ParsedProgram {
	std::vector<SRule> rules;
	std::map<std::string, Term> consts;

	void append(ParsedProgram other);
};

struct ParseOptions {
	/// Accept statements `a senses f [:- body].`, read as the head senses(a,f).
	bool sensing = false;
	/// Added to reported line numbers (for sections cut out of a larger file).
	int line_offset = 0;
};

ParsedProgram parse(std::string_view text, const ParseOptions& opts = {});

} // namespace qasp::syntax
