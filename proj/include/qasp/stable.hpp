#pragma once

#include <qasp/program.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace qasp {

struct EnumerationOptions {
	/// Maximal number of atoms whose subsets are enumerated.
	std::size_t max_atoms = 22;
};

/// Reference semantics by exhaustive enumeration of candidate sets: X is
/// stable iff X satisfies the program and equals the least model of its
/// reduct. Aggregates and choice bounds are evaluated against X. Only atoms
/// occurring in some head are enumerated; throws BudgetExceeded when there are
/// more of them than max_atoms.
std::vector<Interpretation> stable_models(const Program& p, const EnumerationOptions& opts = {});
bool is_stable_model(const Program& p, const Interpretation& x);

/// Backtracking stable model search. Extended programs are compiled first
/// and models are reported over the original universe. Propagation bounds
/// every stable model from below and above (an alternating fixpoint over a
/// partial assignment) and uses integrity constraints backwards; candidates
/// are verified with is_stable_model before being reported.
class Solver {
public:
	explicit Solver(const Program& p);

	/// Assumptions are literals every reported model must satisfy.
	bool satisfiable(const std::vector<Literal>& assumptions = {});
	std::optional<Interpretation> find(const std::vector<Literal>& assumptions = {});
	/// At most limit models (0 = all), in no particular order.
	std::vector<Interpretation> enumerate(std::size_t limit = 0, const std::vector<Literal>& assumptions = {});

	const Program& program() const { return program_; }
	std::size_t calls() const { return calls_; }

private:
	struct IRule {
		int head = -1; // -1 for constraints
		bool choice = false;
		std::vector<int> pos, neg;
	};
	enum Value : signed char { Free = 0, True = 1, False = -1 };

	bool propagate(std::vector<Value>& assign) const;
	void least_model(const std::vector<Value>& assign, bool upper, std::vector<char>& out) const;
	bool search(std::vector<Value> assign, std::size_t limit, std::vector<Interpretation>& out);

	Program program_;
	std::set<Atom> projection_;
	std::vector<Atom> atoms_;
	std::unordered_map<Atom, int> index_;
	std::vector<IRule> rules_;
	std::vector<std::vector<int>> pos_occ_;
	std::vector<char> choice_head_;
	std::size_t calls_ = 0;
};

} // namespace qasp
