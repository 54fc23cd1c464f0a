#pragma once

#include <qasp/program.hpp>
#include <qasp/stable.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qasp {

struct DomainSignature {
	std::set<Atom> fluents;
	std::set<Atom> normal_actions;
	std::set<Atom> sensing_actions;
	std::map<Atom, Atom> senses; // sensing action -> observed fluent
	std::set<Atom> assumables;

	std::set<Atom> actions() const;
	/// Throws InvalidInput unless the sets are disjoint, fluents and actions
	/// non-empty, senses total on the sensing actions and assumables fluents.
	void validate() const;
};

/// prev(f), the value of f in the previous state.
Atom prev(const Atom& f);

struct PlanningDescription {
	DomainSignature sig;
	Program dynamic;
	Program initial;
	Program goal;

	/// Checks the vocabulary of the three rule sets.
	void validate() const;
};

/// Sections @fluents, @actions, @sensing (`a senses f`), @assumable,
/// @dynamic, @initial and @goal. Text before the first section is shared by
/// all of them (#const definitions); `consts` override those definitions.
PlanningDescription parse_description(std::string_view text, const std::map<std::string, std::int64_t>& consts = {});

using State = std::set<Atom>;
using StateSet = std::set<State>;

/// Empty, an action followed by a plan, or a sensing action with one plan
/// for each observed value.
class Plan {
public:
	enum class Kind : std::uint8_t { Empty, Seq, Branch };

	Plan() = default;
	static Plan seq(Atom action);
	static Plan seq(Atom action, Plan rest);
	static Plan branch(Atom sensor, Plan if_true, Plan if_false);
	static Plan sequence(const std::vector<Atom>& actions);

	Kind kind() const { return kind_; }
	const Atom& action() const { return action_; }
	const Plan& rest() const { return next_[0]; }
	const Plan& if_true() const { return next_[0]; }
	const Plan& if_false() const { return next_[1]; }
	std::size_t length() const;

	friend bool operator==(const Plan&, const Plan&);

private:
	Kind kind_ = Kind::Empty;
	Atom action_;
	std::vector<Plan> next_;
};

/// `a1; a2; sense(f) ? ( ... ) : ( ... )`; the empty plan is `[]`.
std::string to_string(const Plan& p);
Plan parse_plan(std::string_view text);

struct AssumptionSolution {
	Plan plan;
	std::set<Atom> true_set;
	std::set<Atom> false_set;
};

/// The transition function defined by the dynamic rules, with the checks
/// the planning semantics depends on.
class Dynamics {
public:
	Dynamics(Program dynamic, DomainSignature sig);

	/// The fluents of the single stable model of s' + {a} + DR, or nothing
	/// when there is none. Throws InvalidInput on two or more stable models.
	std::optional<State> step(const State& s, const Atom& action) const;
	/// Lifted to sets: nothing if the action fails in some state.
	std::optional<StateSet> step(const StateSet& s, const Atom& action) const;
	std::optional<StateSet> apply(const StateSet& s, const Plan& p) const;

	struct Counterexample {
		State state;
		std::optional<Atom> action;
	};
	/// First (state, action) with two or more stable models. States are
	/// enumerated over all subsets of the fluents; throws BudgetExceeded
	/// when there are more than max_fluents.
	std::optional<Counterexample> nondeterministic(std::size_t max_fluents = 16) const;
	/// First state whose successor without any action differs from it.
	std::optional<Counterexample> non_inertial(std::size_t max_fluents = 16) const;

	const DomainSignature& signature() const { return sig_; }

private:
	std::vector<Interpretation> models(const State& s, const Atom* action, std::size_t limit) const;

	DomainSignature sig_;
	mutable Solver solver_;
};

StateSet initial_states(const PlanningDescription& dd);
bool is_goal(const Program& goal, const State& s);

class Planner {
public:
	explicit Planner(const PlanningDescription& dd);

	const PlanningDescription& description() const { return dd_; }
	const Dynamics& dynamics() const { return dyn_; }
	const StateSet& initial() const { return initial_; }

	bool is_solution(const Plan& p) const;
	bool solves(const StateSet& from, const Plan& p) const;
	bool is_assumption_solution(const AssumptionSolution& sol) const;

private:
	PlanningDescription dd_;
	Dynamics dyn_;
	StateSet initial_;
};

/// Sequential plans of exactly n normal actions, or with sensing all plans
/// of length at most n over every action. Throws BudgetExceeded beyond limit plans.
std::vector<Plan> enumerate_plans(const DomainSignature& sig, std::size_t n, bool with_sensing, std::size_t limit = 1000000);

} // namespace qasp
