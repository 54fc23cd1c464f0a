#pragma once

#include <qasp/cnf.hpp>
#include <qasp/qlp.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qasp {

struct QbfBlock {
	Quantifier kind = Quantifier::Exists;
	std::vector<int> vars;

	friend bool operator==(const QbfBlock&, const QbfBlock&) = default;
};

/// Q0 X0 ... Qn Xn matrix. Variables of the matrix outside every block are
/// existential and innermost.
struct QbfProblem {
	std::vector<QbfBlock> prefix;
	CnfFormula matrix;
	AtomMap map;
};

/// Joins adjacent blocks of the same kind and sorts each block.
std::vector<QbfBlock> merge_adjacent(const std::vector<QbfBlock>& prefix);

/// The QBF for a quantified program: translate() of its program, prefix
/// blocks mapped through the atom map, auxiliary variables unquantified.
QbfProblem to_qbf(const QuantifiedProgram& qp);

struct QbfOptions {
	/// Maximal number of search nodes.
	std::uint64_t budget = std::uint64_t{1} << 26;
};

/// QDPLL search with unit propagation, universal reduction and pure literals.
/// When the outermost block is existential the witness lists the mapped atoms
/// of that block that are true in the first successful assignment; the
/// block's variables are decided from the highest down, false first, which
/// matches eval_qlp() on problems built by to_qbf().
SatResult solve(const QbfProblem& q, const QbfOptions& opts = {});

std::string emit_qdimacs(const QbfProblem& q);
/// Reads QDIMACS. Comment lines `c <var> <atom>` restore the atom map.
QbfProblem parse_qdimacs(std::string_view text);

struct ExternalSolver {
	/// Program and arguments; the QDIMACS file path is appended.
	std::vector<std::string> command;
	std::chrono::milliseconds timeout{60000};
};

/// Runs an external QDIMACS solver. The answer is read from an `s cnf 1|0`
/// line or, failing that, from exit codes 10/20. Positive `V` lines of
/// outermost existential variables give the witness.
SatResult solve_external(const QbfProblem& q, const ExternalSolver& solver);

/// The stdout report of a solver run in the format solve_external() reads.
std::string qdimacs_answer(const QbfProblem& q, const SatResult& r);

} // namespace qasp
