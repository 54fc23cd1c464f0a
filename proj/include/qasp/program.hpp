#pragma once

#include <qasp/symbol.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qasp {

/// An atom or its default negation ("not p").
struct Literal {
	Atom atom;
	bool negated = false;

	static Literal pos(Atom a) { return {std::move(a), false}; }
	static Literal neg(Atom a) { return {std::move(a), true}; }
	Literal operator~() const { return {atom, !negated}; }

	friend bool operator==(const Literal&, const Literal&) = default;
	friend auto operator<=>(const Literal&, const Literal&) = default;
};

enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(CmpOp op);
bool compare(std::int64_t lhs, CmpOp op, std::int64_t rhs);

/// Right-hand bound of a cardinality atom: `count op value`.
struct Bound {
	CmpOp op = CmpOp::Eq;
	std::int64_t value = 0;

	bool holds(std::int64_t count) const { return compare(count, op, value); }
	friend bool operator==(const Bound&, const Bound&) = default;
	friend auto operator<=>(const Bound&, const Bound&) = default;
};

/// A conditional literal `l : c1, ..., ck` as used inside braces.
struct Element {
	Literal literal;
	std::vector<Literal> condition;

	friend bool operator==(const Element&, const Element&) = default;
	friend auto operator<=>(const Element&, const Element&) = default;
};

/// Body cardinality atom `{ e1; ...; em } op k`; counts the elements whose
/// literal and condition hold.
struct Aggregate {
	std::vector<Element> elements;
	Bound bound;

	friend bool operator==(const Aggregate&, const Aggregate&) = default;
	friend auto operator<=>(const Aggregate&, const Aggregate&) = default;
};

enum class HeadType : std::uint8_t { Normal, Choice, Constraint };

/// A ground rule. Basic rules (the core fragment) are normal rules `p :- B`,
/// single-atom choice rules `{p} :- B` and constraints `:- B` whose bodies are
/// plain literals. Extended rules additionally carry conditional choice
/// elements, a head bound, or body aggregates; compile_cardinality() removes them.
struct Rule {
	HeadType type = HeadType::Constraint;
	std::vector<Element> head;
	std::optional<Bound> head_bound;
	std::vector<Literal> body;
	std::vector<Aggregate> aggregates;

	static Rule normal(Atom h, std::vector<Literal> body = {});
	static Rule choice(Atom h, std::vector<Literal> body = {});
	static Rule constraint(std::vector<Literal> body);
	static Rule fact(Atom h) { return normal(std::move(h)); }

	bool is_basic() const;
	bool is_fact() const { return type == HeadType::Normal && body.empty() && aggregates.empty(); }
	/// The single head atom of a normal or basic choice rule.
	const Atom& head_atom() const;
	/// Positive/negative body atoms (plain literals only).
	std::vector<Atom> pos_body() const;
	std::vector<Atom> neg_body() const;
	/// Sorts and deduplicates body literals and choice elements.
	void canonicalize();

	friend bool operator==(const Rule&, const Rule&) = default;
	friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// Every atom occurring in the rule, including inside elements and conditions.
void collect_atoms(const Rule& r, std::set<Atom>& out);

using Interpretation = std::set<Atom>;

/// A ground logic program: rules plus its atom universe (every occurring atom
/// plus explicitly declared ones).
class Program {
public:
	Program() = default;
	explicit Program(std::vector<Rule> rules);

	void add(Rule r);
	void add(const Program& other);
	void declare(const Atom& a) { universe_.insert(a); }

	const std::vector<Rule>& rules() const { return rules_; }
	const std::set<Atom>& universe() const { return universe_; }
	std::size_t size() const { return rules_.size(); }
	bool empty() const { return rules_.empty(); }
	bool is_basic() const;
	/// Atoms occurring in rules (without the declared-only ones).
	std::set<Atom> atoms() const;

	/// Equal as rule sets over the same universe (insertion order ignored).
	friend bool operator==(const Program& a, const Program& b);

private:
	std::vector<Rule> rules_;
	std::set<Rule> index_;
	std::set<Atom> universe_;
};

Program operator+(Program lhs, const Program& rhs);

/// Truth of literals, aggregates and bodies in a total interpretation.
bool holds(const Literal& l, const Interpretation& x);
bool holds_all(const std::vector<Literal>& ls, const Interpretation& x);
std::int64_t count(const Aggregate& agg, const Interpretation& x);
bool holds(const Aggregate& agg, const Interpretation& x);
bool body_holds(const Rule& r, const Interpretation& x);

/// Canonical text: one rule per line, body literals in canonical order.
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string to_string(const Program& p);
std::string to_string(const Interpretation& x);

} // namespace qasp
