#include "generators.hpp"
#include "oracles.hpp"

#include <qasp/analysis.hpp>
#include <qasp/cnf.hpp>
#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/stable.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qasp;
using namespace qasp::testing;

namespace {
Atom A(const char* name) { return Symbol::function(name); }
Interpretation I(std::initializer_list<const char*> names) {
	Interpretation x;
	for (auto n : names) { x.insert(A(n)); }
	return x;
}
std::set<Interpretation> as_set(const std::vector<Interpretation>& v) { return {v.begin(), v.end()}; }
const char* P1 = "{a}. {b}. c :- a. c :- b. :- not c.";
} // namespace

TEST_CASE("clauses are normalized", "[cnf]") {
	CnfFormula f;
	f.add({3, -1, 3});
	f.add({-1, 3});
	f.add({2, -2});
	f.add({});
	REQUIRE(f.clauses == std::vector<Clause>{{-1, 3}, {}});
	REQUIRE(f.num_vars == 3);
}

TEST_CASE("completion", "[cnf]") {
	auto t = completion(ground_text(P1));
	REQUIRE(t.map.at(A("a")) == 1);
	REQUIRE(t.map.at(A("c")) == 3);
	REQUIRE(projected_models(t) == std::set<Interpretation>{I({"a", "c"}), I({"a", "b", "c"}), I({"b", "c"})});
	REQUIRE(t.map.dump() == "a\t1\nb\t2\nc\t3\n");

	auto fact = completion(ground_text("a."));
	REQUIRE(fact.cnf.clauses == std::vector<Clause>{{1}});

	Program lonely;
	lonely.add(Rule::constraint({Literal::neg(A("c"))}));
	REQUIRE_FALSE(cnf_satisfiable(completion(lonely).cnf));

	REQUIRE_THROWS_AS(completion(ground_text("a :- b. b :- a.")), InvalidInput);
}

TEST_CASE("level ranking", "[cnf]") {
	auto loop = level_ranking(ground_text("a :- b. b :- a."));
	REQUIRE(projected_models(loop) == std::set<Interpretation>{{}});
	auto ext = level_ranking(ground_text("a :- b. b :- a. {c}. a :- c."));
	REQUIRE(projected_models(ext) == std::set<Interpretation>{{}, I({"a", "b", "c"})});
	auto tight = ground_text(P1);
	REQUIRE(projected_models(level_ranking(tight)) == projected_models(completion(tight)));
	REQUIRE(translate(tight).cnf == completion(tight).cnf);
}

TEST_CASE("fixbf", "[cnf]") {
	auto t = translate(ground_text(P1));
	REQUIRE(fixbf(I({"a"}), I({"a", "b"}), t.map) == std::vector<Clause>{{1}, {-2}});
	REQUIRE(fixbf({}, {}, t.map).empty());
	REQUIRE_THROWS_AS(fixbf(I({"z"}), I({"z"}), t.map), InvalidInput);
	for (const auto& c : fixbf(I({"a"}), I({"a", "b"}), t.map)) { t.cnf.add(c); }
	REQUIRE(projected_models(t) == std::set<Interpretation>{I({"a", "c"})});
}

TEST_CASE("translation preserves stable models", "[cnf][property]") {
	Rng rng(31);
	int nontight = 0;
	for (int i = 0; i < 400; ++i) {
		auto p = random_program(rng, {uniform(rng, 1, 8), uniform(rng, 1, 14)});
		nontight += !is_tight(p);
		REQUIRE(projected_models(translate(p)) == as_set(stable_models(p)));
	}
	REQUIRE(nontight > 50);
}

TEST_CASE("translation of cardinality programs", "[cnf][property]") {
	Rng rng(32);
	for (int i = 0; i < 150; ++i) {
		auto p = random_extended(rng, {uniform(rng, 2, 6), uniform(rng, 1, 8)});
		REQUIRE(projected_models(translate(p)) == as_set(stable_models(p)));
	}
}

TEST_CASE("translation size stays polynomial", "[cnf][property]") {
	Rng rng(33);
	for (int i = 0; i < 200; ++i) {
		auto p = random_program(rng, {uniform(rng, 2, 20), uniform(rng, 1, 40)});
		auto t = translate(p);
		double n = static_cast<double>(p.universe().size());
		double bound = 8.0 * (static_cast<double>(p.size()) * (1 + std::log2(n + 1)) + n * std::log2(n + 1) + n);
		std::size_t lits = 0;
		for (const auto& r : p.rules()) { lits += r.body.size() + 1; }
		REQUIRE(static_cast<double>(t.cnf.clauses.size()) <= bound + 8.0 * static_cast<double>(lits) * (1 + std::log2(n + 1)));
	}
}
