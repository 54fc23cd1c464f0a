#pragma once

#include <qasp/program.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qasp {

enum class Quantifier : std::uint8_t { Exists, Forall };

const char* to_string(Quantifier q);

struct QuantifierBlock {
	Quantifier kind = Quantifier::Exists;
	std::set<Atom> atoms;

	friend bool operator==(const QuantifierBlock&, const QuantifierBlock&) = default;
};

using Prefix = std::vector<QuantifierBlock>;

/// Q0 X0 ... Qn Xn P.
struct QuantifiedProgram {
	Prefix prefix;
	Program program;
};

/// Throws InvalidInput unless blocks are non-empty, pairwise disjoint and
/// inside the program universe.
void validate(const QuantifiedProgram& qp);

/// Joins adjacent blocks of the same kind.
Prefix merge_adjacent(const Prefix& prefix);

struct SatResult {
	bool satisfiable = false;
	/// True atoms of the outermost block, when it is existential and the
	/// program is satisfiable.
	std::optional<Interpretation> witness;

	friend bool operator==(const SatResult&, const SatResult&) = default;
};

/// Constraints :- not p for p in x and :- p for p in y \ x.
std::vector<Rule> fixcons(const std::set<Atom>& x, const std::set<Atom>& y);

struct EvalOptions {
	/// Maximal number of stable model searches.
	std::uint64_t budget = std::uint64_t{1} << 20;
};

/// Decides a quantified program by recursion over the prefix. Subsets of a
/// block are tried in binary counting order, the first atom in canonical
/// order being the least significant bit; the witness is the first subset of
/// the outermost existential block that succeeds.
SatResult eval_qlp(const QuantifiedProgram& qp, const EvalOptions& opts = {});

/// Reads rules plus _exists(I,A) / _forall(I,A) facts. Prefix atoms missing
/// from the program are added to its universe and reported in warnings.
QuantifiedProgram parse_qlp(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// The inverse of parse_qlp: program rules followed by prefix facts.
std::string to_text(const QuantifiedProgram& qp);

} // namespace qasp
