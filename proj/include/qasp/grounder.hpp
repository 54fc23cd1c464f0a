#pragma once

#include <qasp/parser.hpp>
#include <qasp/program.hpp>

#include <set>
#include <string_view>
#include <vector>

namespace qasp {

struct GroundOptions {
	/// Atoms that may be supplied from outside (e.g. previous-state atoms and
	/// actions of dynamic rules). They are not facts, but make their
	/// predicates non-domain and are available for binding variables.
	std::set<Atom> seeds;
};

struct GroundRule {
	Rule rule;
	std::size_t origin; // index of the source rule
};

struct GroundResult {
	std::vector<GroundRule> rules;
	/// Facts of domain predicates, i.e. predicates defined only by positive
	/// rules over other domain predicates.
	std::set<Atom> domain_facts;

	Program program() const;
};

/// Instantiates a program. Variables are bound by positive body literals
/// (domain predicates against their facts, other predicates against an
/// over-approximation of derivable atoms) and by `X = t` binders, which may
/// range over intervals. Comparisons are evaluated and removed; body literals
/// that are ground once bound are kept as they are.
GroundResult ground_detailed(const syntax::ParsedProgram& p, const GroundOptions& opts = {});
Program ground(const syntax::ParsedProgram& p, const GroundOptions& opts = {});
Program ground_text(std::string_view text, const GroundOptions& opts = {});

/// Evaluates a ground term (after constant substitution) to a symbol.
Symbol evaluate(const syntax::Term& t, const std::map<std::string, syntax::Term>& consts = {});

} // namespace qasp
