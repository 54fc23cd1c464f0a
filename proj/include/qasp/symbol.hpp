#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qasp {

/// A ground term: an integer or a function symbol applied to ground terms.
/// Constants are function symbols of arity zero.
///
/// Symbols are totally ordered: numbers precede functions, numbers compare by
/// value, functions by (name, arity, arguments). This order is the canonical
/// order used for every printed artifact and for subset enumeration.
class Symbol {
public:
	enum class Kind : std::uint8_t { Number, Function };

	Symbol() : Symbol(0) {}
	static Symbol number(std::int64_t value) { return Symbol(value); }
	static Symbol function(std::string name, std::vector<Symbol> args = {});

	Kind kind() const { return kind_; }
	bool is_number() const { return kind_ == Kind::Number; }
	bool is_function() const { return kind_ == Kind::Function; }
	std::int64_t value() const { return num_; }
	const std::string& name() const { return name_; }
	std::span<const Symbol> args() const { return args_; }
	std::size_t arity() const { return args_.size(); }

	std::string to_string() const;
	std::size_t hash() const { return hash_; }

	friend bool operator==(const Symbol& a, const Symbol& b);
	friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b);

private:
	explicit Symbol(std::int64_t v);

	Kind kind_;
	std::int64_t num_ = 0;
	std::string name_;
	std::vector<Symbol> args_;
	std::size_t hash_ = 0;
};

/// Ground atoms are function symbols; the predicate is the name, the arity the argument count.
using Atom = Symbol;

std::ostream& operator<<(std::ostream& out, const Symbol& s);

/// Wraps an atom in a unary function: wrap("prev", at(1)) == prev(at(1)).
Atom wrap(std::string_view name, const Atom& inner);
/// make_atom("h", {f, 3}) == h(f,3).
Atom make_atom(std::string_view name, std::vector<Symbol> args);

} // namespace qasp

template <>
struct std::hash<qasp::Symbol> {
	std::size_t operator()(const qasp::Symbol& s) const noexcept { return s.hash(); }
};
