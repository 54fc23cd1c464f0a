#pragma once

#include <qasp/program.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace qasp {

/// DIMACS literals: variable v > 0 is v, its negation -v.
using Clause = std::vector<int>;

struct CnfFormula {
	std::vector<Clause> clauses;
	int num_vars = 0;

	/// Adds a clause after sorting by variable and removing duplicate
	/// literals; tautologies and repeated clauses are dropped.
	void add(Clause c);
	int fresh() { return ++num_vars; }

	friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
	std::set<Clause> seen_;
};

/// Source atoms to CNF variables; other variables are auxiliary.
struct AtomMap {
	std::map<Atom, int> var;
	std::map<int, Atom> atom;

	void add(const Atom& a, int v);
	int at(const Atom& a) const;
	/// `atom<TAB>var` lines in variable order.
	std::string dump() const;

	friend bool operator==(const AtomMap&, const AtomMap&) = default;
};

struct Translation {
	CnfFormula cnf;
	AtomMap map;
};

/// Clark completion with a Tseitin variable per rule body of two or more
/// literals. Atoms of the universe get variables 1..n in canonical order.
/// Throws InvalidInput on non-tight programs. Extended programs are compiled
/// first; the counter atoms become auxiliary variables.
Translation completion(const Program& p);
/// Completion plus weak level ranking constraints: every true atom of a
/// positive loop needs a supporting rule whose body atoms from the same loop
/// have strictly smaller (binary encoded) rank.
Translation level_ranking(const Program& p);
/// completion() for tight programs, level_ranking() otherwise. The models of
/// the result projected through the map are the stable models of p.
Translation translate(const Program& p);

/// Unit clauses p for p in x and -p for p in y \ x.
std::vector<Clause> fixbf(const std::set<Atom>& x, const std::set<Atom>& y, const AtomMap& map);

} // namespace qasp
