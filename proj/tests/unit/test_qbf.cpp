#include "generators.hpp"
#include "oracles.hpp"

#include <qasp/analysis.hpp>
#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/qbf.hpp>
#include <qasp/stable.hpp>

#include <catch_amalgamated.hpp>

using namespace qasp;
using namespace qasp::testing;

namespace {
Atom A(const char* name) { return Symbol::function(name); }
std::set<Atom> S(std::initializer_list<const char*> names) {
	std::set<Atom> x;
	for (auto n : names) { x.insert(A(n)); }
	return x;
}
constexpr auto E = Quantifier::Exists;
constexpr auto F = Quantifier::Forall;

// phi1 = (a | b) & (~a | c) & (~b | c) over a=1, b=2, c=3
QbfProblem phi1(std::vector<QbfBlock> prefix) {
	QbfProblem q;
	q.matrix.add({1, 2});
	q.matrix.add({-1, 3});
	q.matrix.add({-2, 3});
	q.map.add(A("a"), 1);
	q.map.add(A("b"), 2);
	q.map.add(A("c"), 3);
	q.prefix = std::move(prefix);
	return q;
}

const std::vector<std::string> naive_solver{"python3", QASP_FIXTURE_DIR "/naive_qbf.py"};
} // namespace

TEST_CASE("QBF examples", "[qbf]") {
	auto q1 = solve(phi1({{E, {1}}, {F, {2}}}));
	REQUIRE(q1.satisfiable);
	REQUIRE(q1.witness == S({"a"}));
	REQUIRE(solve(phi1({{E, {2, 3}}, {F, {1}}})).satisfiable);
	REQUIRE_FALSE(solve(phi1({{E, {1}}, {F, {2, 3}}})).satisfiable);
	QbfProblem unit;
	unit.matrix.add({1});
	unit.prefix = {{F, {1}}};
	REQUIRE_FALSE(solve(unit).satisfiable);
	QbfProblem empty_clause;
	empty_clause.matrix.add({});
	REQUIRE_FALSE(solve(empty_clause).satisfiable);
	REQUIRE(solve(QbfProblem{}).satisfiable);
}

TEST_CASE("QDIMACS output", "[qbf]") {
	QbfProblem q;
	q.matrix.add({1, 2});
	q.matrix.add({-2});
	q.prefix = {{E, {1}}, {F, {2}}};
	REQUIRE(emit_qdimacs(q) == "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-2 0\n");
	REQUIRE(emit_qdimacs(QbfProblem{}) == "p cnf 0 0\n");

	auto p = phi1({{E, {1}}, {E, {2}}, {F, {3}}});
	p.matrix.num_vars = 4;
	REQUIRE(emit_qdimacs(p) == "c 1 a\nc 2 b\nc 3 c\np cnf 4 3\ne 1 2 0\na 3 0\ne 4 0\n1 2 0\n-1 3 0\n-2 3 0\n");
}

TEST_CASE("QDIMACS round trip", "[qbf]") {
	Rng rng(41);
	for (int i = 0; i < 100; ++i) {
		auto q = random_qbf(rng, uniform(rng, 1, 10), uniform(rng, 0, 20), 4);
		auto text = emit_qdimacs(q);
		auto back = parse_qdimacs(text);
		REQUIRE(emit_qdimacs(back) == text);
		REQUIRE(back.map == q.map);
		REQUIRE(back.matrix.clauses == q.matrix.clauses);
	}
	REQUIRE_THROWS_AS(parse_qdimacs("e 1 0\n"), SyntaxError);
	REQUIRE_THROWS_AS(parse_qdimacs("p cnf 1 1\n1 2 0\n"), SyntaxError);
	REQUIRE_THROWS_AS(parse_qdimacs("p cnf 1 1\n1\n"), SyntaxError);
}

TEST_CASE("search agrees with full expansion", "[qbf][property]") {
	Rng rng(42);
	int sat = 0;
	for (int i = 0; i < 1500; ++i) {
		auto q = random_qbf(rng, uniform(rng, 1, 12), uniform(rng, 0, 30), 4);
		bool expect = expand_qbf(q);
		auto r = solve(q);
		REQUIRE(r.satisfiable == expect);
		sat += expect;
		auto merged = q;
		merged.prefix = merge_adjacent(q.prefix);
		REQUIRE(solve(merged).satisfiable == expect);
	}
	REQUIRE(sat > 100);
	REQUIRE(sat < 1400);
}

TEST_CASE("QBF witness is checked by expansion", "[qbf][property]") {
	Rng rng(43);
	for (int i = 0; i < 500; ++i) {
		auto q = random_qbf(rng, uniform(rng, 1, 10), uniform(rng, 0, 20), 3);
		auto r = solve(q);
		if (!r.witness) { continue; }
		auto fixed = q;
		for (int v : q.prefix[0].vars) { fixed.matrix.add({r.witness->contains(q.map.atom.at(v)) ? v : -v}); }
		REQUIRE(expand_qbf(fixed));
	}
}

TEST_CASE("quantified programs and their QBFs agree", "[qbf][property]") {
	Rng rng(44);
	int instances = 0, witnesses = 0, nontight = 0;
	for (int i = 0; i < 600; ++i) {
		auto p = random_program(rng, {uniform(rng, 1, 10), uniform(rng, 1, 15)});
		nontight += !is_tight(p);
		QuantifiedProgram qp{random_prefix(rng, p.universe(), 3), p};
		auto expect = eval_qlp(qp);
		auto got = solve(to_qbf(qp));
		REQUIRE(got.satisfiable == expect.satisfiable);
		REQUIRE(got.witness == expect.witness);
		++instances;
		witnesses += expect.witness.has_value();
	}
	REQUIRE(instances >= 500);
	REQUIRE(witnesses > 100);
	REQUIRE(nontight > 60);
}

TEST_CASE("external solver adapter", "[qbf][external]") {
	SECTION("answers and certificates") {
		auto r = solve_external(phi1({{E, {1}}, {F, {2}}}), {naive_solver});
		REQUIRE(r.satisfiable);
		REQUIRE(r.witness == S({"a"}));
		REQUIRE_FALSE(solve_external(phi1({{E, {1}}, {F, {2, 3}}}), {naive_solver}).satisfiable);
	}
	SECTION("differential") {
		Rng rng(45);
		for (int i = 0; i < 40; ++i) {
			auto q = random_qbf(rng, uniform(rng, 1, 8), uniform(rng, 0, 16), 3);
			REQUIRE(solve_external(q, {naive_solver}).satisfiable == solve(q).satisfiable);
		}
	}
	SECTION("exit codes without output") {
		auto r = solve_external(phi1({}), {{"sh", "-c", "exit 10"}});
		REQUIRE(r.satisfiable);
		REQUIRE_FALSE(r.witness);
		REQUIRE_FALSE(solve_external(phi1({}), {{"sh", "-c", "exit 20"}}).satisfiable);
	}
	SECTION("failures") {
		REQUIRE_THROWS_AS(solve_external(phi1({}), {{"sh", "-c", "echo s cnf maybe"}}), SolverError);
		REQUIRE_THROWS_AS(solve_external(phi1({}), {{"sh", "-c", "exit 3"}}), SolverError);
		REQUIRE_THROWS_AS(solve_external(phi1({}), {{"/nonexistent/solver"}}), SolverError);
		REQUIRE_THROWS_AS(solve_external(phi1({}), {{"sh", "-c", "sleep 5"}, std::chrono::milliseconds(200)}), SolverError);
	}
}
