#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/planning.hpp>

#include <algorithm>
#include <cctype>

namespace qasp {

Plan Plan::seq(Atom action) { return seq(std::move(action), Plan()); }

Plan Plan::seq(Atom action, Plan rest) {
	Plan p;
	p.kind_ = Kind::Seq;
	p.action_ = std::move(action);
	p.next_.push_back(std::move(rest));
	return p;
}

Plan Plan::branch(Atom sensor, Plan if_true, Plan if_false) {
	Plan p;
	p.kind_ = Kind::Branch;
	p.action_ = std::move(sensor);
	p.next_.push_back(std::move(if_true));
	p.next_.push_back(std::move(if_false));
	return p;
}

Plan Plan::sequence(const std::vector<Atom>& actions) {
	Plan p;
	for (auto it = actions.rbegin(); it != actions.rend(); ++it) { p = seq(*it, std::move(p)); }
	return p;
}

std::size_t Plan::length() const {
	switch (kind_) {
	case Kind::Empty: return 0;
	case Kind::Seq: return 1 + rest().length();
	case Kind::Branch: return 1 + std::max(if_true().length(), if_false().length());
	}
	return 0;
}

bool operator==(const Plan& a, const Plan& b) {
	if (a.kind_ != b.kind_) { return false; }
	return a.kind_ == Plan::Kind::Empty || (a.action_ == b.action_ && a.next_ == b.next_);
}

std::string to_string(const Plan& p) {
	switch (p.kind()) {
	case Plan::Kind::Empty: return "[]";
	case Plan::Kind::Seq:
		if (p.rest().kind() == Plan::Kind::Empty) { return p.action().to_string(); }
		return p.action().to_string() + "; " + to_string(p.rest());
	case Plan::Kind::Branch:
		return p.action().to_string() + " ? ( " + to_string(p.if_true()) + " ) : ( " + to_string(p.if_false()) + " )";
	}
	return "";
}

namespace {

class PlanReader {
public:
	explicit PlanReader(std::string_view text) : text_(text) {}

	Plan read() {
		Plan p = plan();
		skip();
		if (pos_ != text_.size()) { fail("unexpected input"); }
		return p;
	}

private:
	[[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg + " in plan", 1, static_cast<int>(pos_) + 1); }
	void skip() {
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) { ++pos_; }
	}
	bool eat(char c) {
		skip();
		if (pos_ < text_.size() && text_[pos_] == c) {
			++pos_;
			return true;
		}
		return false;
	}
	void expect(char c) {
		if (!eat(c)) { fail(std::string("expected '") + c + "'"); }
	}

	Plan plan() {
		skip();
		if (text_.substr(pos_).starts_with("[]")) {
			pos_ += 2;
			return {};
		}
		Atom a = atom();
		if (eat('?')) {
			expect('(');
			Plan t = plan();
			expect(')');
			expect(':');
			expect('(');
			Plan f = plan();
			expect(')');
			return Plan::branch(a, std::move(t), std::move(f));
		}
		if (eat(';')) { return Plan::seq(a, plan()); }
		return Plan::seq(a);
	}

	Atom atom() {
		std::size_t start = pos_;
		int depth = 0;
		while (pos_ < text_.size()) {
			char c = text_[pos_];
			if (c == '(') { ++depth; }
			else if (c == ')') {
				if (depth == 0) { break; }
				--depth;
			}
			else if (depth == 0 && (c == ';' || c == '?' || c == ':')) { break; }
			++pos_;
		}
		std::string s(text_.substr(start, pos_ - start));
		while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) { s.pop_back(); }
		if (s.empty()) { fail("expected an action"); }
		auto p = ground_text(s + ".");
		if (p.size() != 1 || !p.rules()[0].is_fact()) { fail("not an action: " + s); }
		return p.rules()[0].head_atom();
	}

	std::string_view text_;
	std::size_t pos_ = 0;
};

Program with_inputs(Program p, const DomainSignature& sig) {
	for (const auto& f : sig.fluents) { p.add(Rule::choice(prev(f))); }
	for (const auto& a : sig.actions()) { p.add(Rule::choice(a)); }
	return p;
}

State fluents_of(const Interpretation& m, const std::set<Atom>& fluents) {
	State s;
	for (const auto& a : m) {
		if (fluents.contains(a)) { s.insert(a); }
	}
	return s;
}

std::vector<State> all_states(const std::set<Atom>& fluents, std::size_t max_fluents) {
	if (fluents.size() > max_fluents) { throw BudgetExceeded("too many fluents to enumerate states"); }
	std::vector<Atom> fs(fluents.begin(), fluents.end());
	std::vector<State> out;
	for (std::uint64_t m = 0; m < (std::uint64_t{1} << fs.size()); ++m) {
		State s;
		for (std::size_t i = 0; i != fs.size(); ++i) {
			if (m >> i & 1U) { s.insert(fs[i]); }
		}
		out.push_back(std::move(s));
	}
	return out;
}

} // namespace

Plan parse_plan(std::string_view text) { return PlanReader(text).read(); }

Dynamics::Dynamics(Program dynamic, DomainSignature sig) : sig_(std::move(sig)), solver_(with_inputs(std::move(dynamic), sig_)) {}

std::vector<Interpretation> Dynamics::models(const State& s, const Atom* action, std::size_t limit) const {
	std::vector<Literal> assume;
	for (const auto& f : sig_.fluents) { assume.push_back({prev(f), !s.contains(f)}); }
	for (const auto& a : sig_.actions()) { assume.push_back({a, !(action && *action == a)}); }
	return solver_.enumerate(limit, assume);
}

std::optional<State> Dynamics::step(const State& s, const Atom& action) const {
	auto ms = models(s, &action, 2);
	if (ms.size() > 1) { throw InvalidInput("action " + action.to_string() + " is not deterministic in state " + to_string(s)); }
	if (ms.empty()) { return std::nullopt; }
	return fluents_of(ms[0], sig_.fluents);
}

std::optional<StateSet> Dynamics::step(const StateSet& s, const Atom& action) const {
	StateSet out;
	for (const auto& x : s) {
		auto y = step(x, action);
		if (!y) { return std::nullopt; }
		out.insert(std::move(*y));
	}
	return out;
}

std::optional<StateSet> Dynamics::apply(const StateSet& s, const Plan& p) const {
	switch (p.kind()) {
	case Plan::Kind::Empty: return s;
	case Plan::Kind::Seq: {
		auto next = step(s, p.action());
		if (!next) { return std::nullopt; }
		return apply(*next, p.rest());
	}
	case Plan::Kind::Branch: {
		auto next = step(s, p.action());
		if (!next) { return std::nullopt; }
		auto it = sig_.senses.find(p.action());
		if (it == sig_.senses.end()) { throw InvalidInput(p.action().to_string() + " is not a sensing action"); }
		StateSet yes, no;
		for (const auto& x : *next) { (x.contains(it->second) ? yes : no).insert(x); }
		auto a = apply(yes, p.if_true());
		auto b = apply(no, p.if_false());
		if (!a || !b) { return std::nullopt; }
		a->insert(b->begin(), b->end());
		return a;
	}
	}
	return std::nullopt;
}

std::optional<Dynamics::Counterexample> Dynamics::nondeterministic(std::size_t max_fluents) const {
	for (const auto& s : all_states(sig_.fluents, max_fluents)) {
		for (const auto& a : sig_.actions()) {
			if (models(s, &a, 2).size() > 1) { return Counterexample{s, a}; }
		}
	}
	return std::nullopt;
}

std::optional<Dynamics::Counterexample> Dynamics::non_inertial(std::size_t max_fluents) const {
	for (const auto& s : all_states(sig_.fluents, max_fluents)) {
		auto ms = models(s, nullptr, 2);
		if (ms.size() != 1 || fluents_of(ms[0], sig_.fluents) != s) { return Counterexample{s, std::nullopt}; }
	}
	return std::nullopt;
}

StateSet initial_states(const PlanningDescription& dd) {
	Solver solver(dd.initial);
	StateSet out;
	for (const auto& m : solver.enumerate()) { out.insert(fluents_of(m, dd.sig.fluents)); }
	if (out.empty()) { throw InvalidInput("the initial rules have no stable model"); }
	return out;
}

bool is_goal(const Program& goal, const State& s) {
	return std::none_of(goal.rules().begin(), goal.rules().end(), [&](const Rule& r) { return body_holds(r, s); });
}

Planner::Planner(const PlanningDescription& dd) : dd_(dd), dyn_(dd.dynamic, dd.sig), initial_(initial_states(dd)) {}

bool Planner::solves(const StateSet& from, const Plan& p) const {
	auto out = dyn_.apply(from, p);
	if (!out) { return false; }
	return std::all_of(out->begin(), out->end(), [&](const State& s) { return is_goal(dd_.goal, s); });
}

bool Planner::is_solution(const Plan& p) const { return solves(initial_, p); }

bool Planner::is_assumption_solution(const AssumptionSolution& sol) const {
	for (const auto& f : sol.true_set) {
		if (sol.false_set.contains(f)) { throw InvalidInput(f.to_string() + " is assumed both true and false"); }
		if (!dd_.sig.assumables.contains(f)) { throw InvalidInput(f.to_string() + " is not assumable"); }
	}
	for (const auto& f : sol.false_set) {
		if (!dd_.sig.assumables.contains(f)) { throw InvalidInput(f.to_string() + " is not assumable"); }
	}
	StateSet j;
	for (const auto& s : initial_) {
		bool ok = std::all_of(sol.true_set.begin(), sol.true_set.end(), [&](const Atom& f) { return s.contains(f); }) &&
		          std::none_of(sol.false_set.begin(), sol.false_set.end(), [&](const Atom& f) { return s.contains(f); });
		if (ok) { j.insert(s); }
	}
	return !j.empty() && solves(j, sol.plan);
}

std::vector<Plan> enumerate_plans(const DomainSignature& sig, std::size_t n, bool with_sensing, std::size_t limit) {
	std::vector<Plan> out;
	auto guard = [&](std::size_t size) {
		if (size > limit) { throw BudgetExceeded("too many plans to enumerate"); }
	};
	if (!with_sensing) {
		out.emplace_back();
		for (std::size_t i = 0; i < n; ++i) {
			std::vector<Plan> next;
			for (const auto& a : sig.normal_actions) {
				for (const auto& p : out) {
					next.push_back(Plan::seq(a, p));
					guard(next.size());
				}
			}
			out = std::move(next);
		}
		return out;
	}
	// plans of length <= k built from those of length <= k-1
	out.emplace_back();
	for (std::size_t k = 0; k < n; ++k) {
		std::vector<Plan> next{Plan{}};
		for (const auto& a : sig.normal_actions) {
			for (const auto& p : out) {
				next.push_back(Plan::seq(a, p));
				guard(next.size());
			}
		}
		for (const auto& a : sig.sensing_actions) {
			for (const auto& t : out) {
				for (const auto& f : out) {
					next.push_back(Plan::branch(a, t, f));
					guard(next.size());
				}
			}
		}
		out = std::move(next);
	}
	return out;
}

} // namespace qasp
