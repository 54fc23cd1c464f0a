#pragma once

#include <qasp/program.hpp>
#include <qasp/qlp.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qasp {

/// A program quantified over its stable models.
struct AspqBlock {
	Quantifier kind = Quantifier::Exists;
	Program program;
};

/// Q0 P0 ... Qn Pn : C.
struct AspqProgram {
	std::vector<AspqBlock> blocks;
	Program check;

	/// Throws InvalidInput unless there is a block and C is stratified
	/// without choice rules.
	void validate() const;
};

/// Facts for x and constraints :- p for p in y \ x.
std::vector<Rule> fixfact(const std::set<Atom>& x, const std::set<Atom>& y);

struct CoherenceOptions {
	/// Maximal number of stable models enumerated over all blocks.
	std::uint64_t budget = std::uint64_t{1} << 20;
};

/// Recursive evaluation over the stable models of each block; every stable
/// model is passed on to the next block by fixfact.
bool coherent(const AspqProgram& pi, const CoherenceOptions& opts = {});

/// Moves C into a trailing existential block, turns rules redefining atoms of
/// earlier blocks into constraints (or drops such choices) and brings the
/// universal blocks into GDT form. Cardinality constructs are compiled first.
AspqProgram normalize(const AspqProgram& pi);
bool is_normal_form(const AspqProgram& pi);

/// Requires normal and universal-GDT form. Integrity constraints of universal
/// blocks derive _alpha(i); rules of existential blocks are disabled by it.
QuantifiedProgram to_qlp(const AspqProgram& pi);

/// One block of choices {p'} per quantifier block, then an existential block
/// with the program and the constraints tying p to p'.
AspqProgram from_qlp(const QuantifiedProgram& qp);

/// The primed copy p' of an atom.
Atom primed(const Atom& a);

/// Blocks start at lines `%@exists` or `%@forall`; `%@check` starts C.
/// Each block is grounded with the atoms of the earlier blocks available.
AspqProgram parse_aspq(std::string_view text);
std::string to_text(const AspqProgram& pi);

} // namespace qasp
