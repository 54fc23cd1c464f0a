#include "generators.hpp"
#include "robot.hpp"

#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/planning.hpp>
#include <qasp/stable.hpp>

#include <catch_amalgamated.hpp>

using namespace qasp;
using namespace qasp::testing;

namespace {
const Atom go = act("go");
const Atom sweep = act("sweep");

StateSet with_subsets(const State& base, const std::set<Atom>& optional) {
	StateSet out{base};
	for (const auto& f : optional) {
		StateSet more;
		for (auto s : out) {
			s.insert(f);
			more.insert(s);
		}
		out.insert(more.begin(), more.end());
	}
	return out;
}

const Plan p1 = Plan::sequence({go, sweep});
const Plan p2 = Plan::sequence({sweep, go, sweep});
const Plan p3 = Plan::branch(sense(1), Plan::sequence({go, sweep}), Plan::sequence({sweep}));
} // namespace

TEST_CASE("reading descriptions", "[planning]") {
	auto dd = robot(3);
	REQUIRE(dd.sig.fluents.size() == 6);
	REQUIRE(dd.sig.normal_actions == std::set<Atom>{go, sweep});
	REQUIRE(dd.sig.sensing_actions == std::set<Atom>{sense(1), sense(2)});
	REQUIRE(dd.sig.senses.at(sense(2)) == occupied(2));
	REQUIRE(dd.sig.assumables == std::set<Atom>{occupied(1), occupied(2)});
	REQUIRE(robot(1, 3).sig.fluents.size() == 9);

	REQUIRE_THROWS_AS(parse_description("@fluents\na.\n@bogus\n"), SyntaxError);
	REQUIRE_THROWS_AS(parse_description("@fluents\na.\n@actions\nb.\n@dynamic\nc :- b.\n"), InvalidInput);
	REQUIRE_THROWS_AS(parse_description("@fluents\na.\n@actions\nb.\n@goal\n:- prev(a).\n"), InvalidInput);
	REQUIRE_THROWS_AS(parse_description("@fluents\na.\n@actions\na.\n"), InvalidInput);
	REQUIRE_THROWS_AS(parse_description("@fluents\na.\n"), InvalidInput);
}

TEST_CASE("plans", "[planning]") {
	REQUIRE(p1.length() == 2);
	REQUIRE(p2.length() == 3);
	REQUIRE(p3.length() == 3);
	REQUIRE(Plan().length() == 0);
	REQUIRE(to_string(p1) == "go; sweep");
	REQUIRE(to_string(p3) == "sense(occupied(1)) ? ( go; sweep ) : ( sweep )");
	REQUIRE(to_string(Plan()) == "[]");
	for (const auto& p : {p1, p2, p3, Plan(), Plan::branch(sense(2), Plan(), p3)}) { REQUIRE(parse_plan(to_string(p)) == p); }
	REQUIRE_THROWS_AS(parse_plan("go;"), SyntaxError);
	REQUIRE_THROWS_AS(parse_plan("s ? ( go )"), SyntaxError);
}

TEST_CASE("transitions of the example", "[planning]") {
	Dynamics dyn(robot(1).dynamic, robot(1).sig);
	REQUIRE(dyn.step(State{at(1), clean(1)}, go) == State{at(2), clean(1)});
	REQUIRE_FALSE(dyn.step(State{at(1), occupied(1)}, sweep));
	REQUIRE(dyn.step(State{at(1), occupied(2)}, sense(1)) == State{at(1), occupied(2)});
	REQUIRE_FALSE(dyn.step(State{at(2)}, sense(1)));

	auto i1 = initial_states(robot(1));
	auto i2 = initial_states(robot(2));
	auto i3 = initial_states(robot(3));
	REQUIRE(i1 == StateSet{{at(1), clean(1)}});
	REQUIRE(i2 == with_subsets({at(1)}, {clean(1), clean(2)}));
	REQUIRE(i3.size() == 8);
	REQUIRE(i3 == [&] {
		StateSet out;
		for (auto s : i2) {
			for (int o : {1, 2}) {
				auto t = s;
				t.insert(occupied(o));
				out.insert(t);
			}
		}
		return out;
	}());

	REQUIRE(dyn.step(i1, go) == StateSet{{at(2), clean(1)}});
	REQUIRE(dyn.step(i2, sweep) == StateSet{{at(1), clean(1)}, {at(1), clean(1), clean(2)}});
	REQUIRE_FALSE(dyn.step(i3, sweep));
	REQUIRE_FALSE(dyn.step(*dyn.step(i3, go), sweep));

	REQUIRE(dyn.apply(i1, p1) == StateSet{{at(2), clean(1), clean(2)}});
	REQUIRE(dyn.apply(i2, p2) == StateSet{{at(2), clean(1), clean(2)}});
	REQUIRE(dyn.apply(i2, Plan()) == i2);
	StateSet occ1;
	for (const auto& s : i3) {
		if (s.contains(occupied(1))) { occ1.insert(s); }
	}
	REQUIRE(dyn.apply(occ1, p1) == with_subsets({at(2), occupied(1), clean(2)}, {clean(1)}));
	auto expect3 = with_subsets({at(2), occupied(1), clean(2)}, {clean(1)});
	auto other = with_subsets({at(1), occupied(2), clean(1)}, {clean(2)});
	expect3.insert(other.begin(), other.end());
	REQUIRE(dyn.apply(i3, p3) == expect3);
}

TEST_CASE("solutions of the example", "[planning]") {
	Planner pp1(robot(1)), pp2(robot(2)), pp3(robot(3));
	REQUIRE(pp1.is_solution(p1));
	REQUIRE(pp2.is_solution(p2));
	REQUIRE(pp3.is_solution(p3));
	REQUIRE_FALSE(pp2.is_solution(p1));
	REQUIRE_FALSE(pp3.is_solution(p2));
	for (std::size_t n = 0; n <= 4; ++n) {
		for (const auto& p : enumerate_plans(pp3.description().sig, n, false)) {
			REQUIRE_FALSE(pp3.is_solution(p));
			if (to_string(p).find("sweep") != std::string::npos) { REQUIRE_FALSE(pp3.dynamics().apply(pp3.initial(), p)); }
		}
	}
	REQUIRE(pp3.is_assumption_solution({p1, {occupied(1)}, {}}));
	REQUIRE(pp3.is_assumption_solution({Plan::sequence({sweep}), {occupied(2)}, {}}));
	REQUIRE_FALSE(pp3.is_assumption_solution({Plan::sequence({sweep}), {}, {}}));
	REQUIRE_FALSE(pp3.is_assumption_solution({Plan(), {occupied(1), occupied(2)}, {}}));
	REQUIRE_THROWS_AS(pp3.is_assumption_solution({Plan(), {occupied(1)}, {occupied(1)}}), InvalidInput);
}

TEST_CASE("the example is deterministic and inertial", "[planning]") {
	for (int rooms : {2, 3}) {
		auto dd = robot(3, rooms);
		Dynamics dyn(dd.dynamic, dd.sig);
		REQUIRE_FALSE(dyn.nondeterministic());
		REQUIRE_FALSE(dyn.non_inertial());
	}
	auto dd = robot(3);
	auto broken = ground_text("{clean(1)} :- sweep.");
	Dynamics nondet(dd.dynamic + broken, dd.sig);
	auto ce = nondet.nondeterministic();
	REQUIRE(ce);
	REQUIRE(ce->action == sweep);
	// sweeping room 1 forces clean(1), so the choice only matters elsewhere
	REQUIRE_FALSE(ce->state.contains(at(1)));
	REQUIRE_FALSE(ce->state.contains(clean(1)));
	REQUIRE_THROWS_AS(nondet.step(State{at(2)}, sweep), InvalidInput);
	REQUIRE(nondet.step(State{at(1)}, sweep) == State{at(1), clean(1)});

	Program no_occupancy;
	for (const auto& r : dd.dynamic.rules()) {
		if (r.type != HeadType::Normal || r.head_atom().name() != "occupied") { no_occupancy.add(r); }
	}
	auto ni = Dynamics(no_occupancy, dd.sig).non_inertial();
	REQUIRE(ni);
	REQUIRE(std::any_of(ni->state.begin(), ni->state.end(), [](const Atom& f) { return f.name() == "occupied"; }));

	Program pure;
	for (const auto& f : dd.sig.fluents) { pure.add(Rule::normal(f, {Literal::pos(prev(f))})); }
	REQUIRE_FALSE(Dynamics(pure, dd.sig).non_inertial());
	REQUIRE_FALSE(Dynamics(Program(), dd.sig).nondeterministic());
}

TEST_CASE("extracted transitions match the example's", "[planning]") {
	for (int rooms : {2, 3}) {
		auto dd = robot(3, rooms);
		Dynamics dyn(dd.dynamic, dd.sig);
		std::vector<Atom> fs(dd.sig.fluents.begin(), dd.sig.fluents.end());
		for (std::uint64_t m = 0; m < (std::uint64_t{1} << fs.size()); ++m) {
			State s;
			for (std::size_t i = 0; i != fs.size(); ++i) {
				if (m >> i & 1U) { s.insert(fs[i]); }
			}
			for (const auto& a : dd.sig.actions()) { REQUIRE(dyn.step(s, a) == robot_step(s, a, rooms)); }
		}
	}
}

TEST_CASE("goal states", "[planning]") {
	auto gr = robot(1).goal;
	REQUIRE(is_goal(gr, {occupied(1), clean(2), at(2)}));
	REQUIRE_FALSE(is_goal(gr, {at(1)}));
	REQUIRE(is_goal(Program(), {}));
	// direct check agrees with the stable models of the goal program
	auto dd = robot(1);
	Program gen = gr;
	for (const auto& f : dd.sig.fluents) { gen.add(Rule::choice(f)); }
	std::set<State> goals;
	for (const auto& m : stable_models(gen)) { goals.insert(m); }
	std::vector<Atom> fs(dd.sig.fluents.begin(), dd.sig.fluents.end());
	for (std::uint64_t m = 0; m < (std::uint64_t{1} << fs.size()); ++m) {
		State s;
		for (std::size_t i = 0; i != fs.size(); ++i) {
			if (m >> i & 1U) { s.insert(fs[i]); }
		}
		REQUIRE(is_goal(gr, s) == goals.contains(s));
	}
}

TEST_CASE("plan enumeration", "[planning]") {
	auto sig = robot(3).sig;
	REQUIRE(enumerate_plans(sig, 1, false) == std::vector<Plan>{Plan::sequence({go}), Plan::sequence({sweep})});
	REQUIRE(enumerate_plans(sig, 0, false) == std::vector<Plan>{Plan()});
	REQUIRE(enumerate_plans(sig, 0, true) == std::vector<Plan>{Plan()});
	auto two = enumerate_plans(sig, 2, true);
	REQUIRE(std::find(two.begin(), two.end(), Plan::branch(sense(1), Plan::sequence({go}), Plan::sequence({sweep}))) != two.end());
	for (const auto& p : two) { REQUIRE(p.length() <= 2); }
	// 1 + 2*5 + 2*25 plans of length at most two
	REQUIRE(two.size() == 61);
	REQUIRE_THROWS_AS(enumerate_plans(sig, 3, true, 1000), BudgetExceeded);
}

TEST_CASE("lifting to state sets", "[planning][property]") {
	auto dd = robot(3);
	Dynamics dyn(dd.dynamic, dd.sig);
	Rng rng(51);
	std::vector<Atom> fs(dd.sig.fluents.begin(), dd.sig.fluents.end());
	auto random_state = [&] {
		State s;
		for (const auto& f : fs) {
			if (coin(rng)) { s.insert(f); }
		}
		return s;
	};
	auto plans = enumerate_plans(dd.sig, 2, true);
	for (int i = 0; i < 200; ++i) {
		StateSet s;
		for (int k = uniform(rng, 0, 4); k > 0; --k) { s.insert(random_state()); }
		for (const auto& a : dd.sig.actions()) {
			std::optional<StateSet> expect = StateSet{};
			for (const auto& x : s) {
				auto y = dyn.step(x, a);
				if (!y) {
					expect.reset();
					break;
				}
				expect->insert(*y);
			}
			REQUIRE(dyn.step(s, a) == expect);
		}
		const auto& p = plans[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(plans.size()) - 1))];
		if (!dyn.apply(s, p)) {
			auto bigger = s;
			bigger.insert(random_state());
			REQUIRE_FALSE(dyn.apply(bigger, p));
		}
	}
}
