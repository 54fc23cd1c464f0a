#pragma once

#include <qasp/backend.hpp>
#include <qasp/planning.hpp>
#include <qasp/qlp.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qasp {

enum class Mode : std::uint8_t { Classical, Conformant, Assumption, Conditional };

const char* to_string(Mode m);
Mode parse_mode(std::string_view name);

/// The designated atom sets of an encoding. occ_at and obs_at are indexed by
/// time step minus one.
struct Vocabulary {
	std::set<Atom> occ;
	std::vector<std::set<Atom>> occ_at;
	std::vector<std::set<Atom>> obs_at;
	std::set<Atom> open;
	std::set<Atom> assume;
	std::set<Atom> alpha;
};

struct EncodedProblem {
	QuantifiedProgram qlp;
	Mode mode = Mode::Classical;
	int horizon = 1;
	Vocabulary vocab;
	/// E.g. that the initial rules were rewritten into GDT form.
	std::vector<std::string> notices;
};

struct DecodedSolution {
	Mode mode = Mode::Classical;
	Plan plan;
	std::set<Atom> true_set;
	std::set<Atom> false_set;
};

/// t(1..n), action(a) for every action and senses(a,f) for every sensing action.
Program build_domain_facts(const DomainSignature& sig, int n);

Atom holds_at(const Atom& fluent, int t);  // h(f,t)
Atom occurs_at(const Atom& action, int t); // occ(a,t)
Atom alpha_at(int t);

/// The time-indexed initial, dynamic and goal rules.
Program tt(const PlanningDescription& dd, int n);
/// tt with integrity constraints of the initial rules deriving alpha(0), and
/// not alpha(t) added to the dynamic and goal rules. The initial rules are
/// compiled and, when needed, rewritten into GDT form first.
Program ttt(const PlanningDescription& dd, int n);
/// Choice head atoms of the time-indexed (GDT form) initial rules.
std::set<Atom> open_atoms(const PlanningDescription& dd);

/// Sequential modes plan over the normal actions only.
EncodedProblem encode_classical(const PlanningDescription& dd, int n);
EncodedProblem encode_conformant(const PlanningDescription& dd, int n);
EncodedProblem encode_assumption(const PlanningDescription& dd, const std::set<Atom>& assumable, int n);
EncodedProblem encode_conditional(const PlanningDescription& dd, int n);
EncodedProblem encode(const PlanningDescription& dd, Mode mode, int n);

/// Reads a plan from a witness of the outermost block. Conditional plans
/// are completed by solving again with the chosen actions and observations
/// fixed, one step at a time.
DecodedSolution decode(const EncodedProblem& ep, const Interpretation& witness, const Backend& backend = {});

struct IncrementalResult {
	DecodedSolution solution;
	int horizon = 0;
};

/// The smallest horizon in 1..n_max with a solution. Assumption mode uses
/// the assumable fluents of the description.
std::optional<IncrementalResult> solve_incremental(const PlanningDescription& dd, Mode mode, int n_max,
                                                   const Backend& backend = {});

} // namespace qasp
