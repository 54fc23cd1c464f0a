#include "aspq_gen.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "robot.hpp"

#include <qasp/analysis.hpp>
#include <qasp/aspq.hpp>
#include <qasp/encoders.hpp>
#include <qasp/error.hpp>
#include <qasp/grounder.hpp>

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
const char* P1 = "{a}. {b}. c :- a. c :- b. :- not c.";
} // namespace

TEST_CASE("fixfact", "[aspq]") {
	auto rs = fixfact(S({"a"}), S({"a", "b"}));
	REQUIRE(rs.size() == 2);
	REQUIRE(to_string(rs[0]) == "a.");
	REQUIRE(to_string(rs[1]) == ":- b.");
	auto only = fixfact({}, S({"a"}));
	REQUIRE(only.size() == 1);
	REQUIRE(to_string(only[0]) == ":- a.");
	REQUIRE_THROWS_AS(fixfact(S({"a"}), S({"b"})), InvalidInput);
}

TEST_CASE("coherence", "[aspq]") {
	REQUIRE(coherent({{{E, ground_text("a.")}}, Program()}));
	REQUIRE_FALSE(coherent({{{F, ground_text("{a}.")}}, ground_text(":- a.")}));
	REQUIRE(coherent({{{F, ground_text("{a}.")}}, ground_text("b :- a. :- a, not b.")}));
	// no stable model: the universal case holds vacuously, the existential one fails
	REQUIRE(coherent({{{F, ground_text("a :- not a.")}}, Program()}));
	REQUIRE_FALSE(coherent({{{E, ground_text("a :- not a.")}}, Program()}));
	// stable models of a block are passed on as facts
	REQUIRE(coherent({{{E, ground_text("{a}.")}, {F, ground_text("{b}.")}, {E, ground_text(":- not a.")}}, Program()}));
	REQUIRE_FALSE(coherent({{{E, ground_text("{a}.")}, {F, ground_text("{b}.")}, {E, ground_text(":- not b.")}}, Program()}));
	REQUIRE_THROWS_AS(coherent({{{E, ground_text("{a;b;c;d}.")}}, Program()}, {3}), BudgetExceeded);
	REQUIRE_THROWS_AS(coherent({{}, Program()}), InvalidInput);
	REQUIRE_THROWS_AS(coherent({{{E, ground_text("a.")}}, ground_text("{b}.")}), InvalidInput);
	REQUIRE_THROWS_AS(coherent({{{E, ground_text("a.")}}, ground_text("b :- not c. c :- not b.")}), InvalidInput);
}

TEST_CASE("normal form", "[aspq]") {
	AspqProgram pi{{{E, ground_text("{a}.")}, {F, ground_text("{b}. a :- b. {a}.")}}, ground_text(":- not a.")};
	REQUIRE_FALSE(is_normal_form(pi));
	auto nf = normalize(pi);
	REQUIRE(is_normal_form(nf));
	REQUIRE(nf.blocks.size() == 3);
	REQUIRE(nf.blocks[2].kind == E);
	REQUIRE(nf.blocks[2].program == ground_text(":- not a."));
	REQUIRE(nf.blocks[1].program == ground_text("{b}. :- b, not a."));
	REQUIRE(coherent(nf) == coherent(pi));

	AspqProgram normal{{{E, ground_text("{a}.")}, {F, ground_text("{b}. c :- b.")}}, Program()};
	REQUIRE(normalize(normal).blocks.size() == 2);
	REQUIRE(normalize(normal).blocks[1].program == normal.blocks[1].program);

	// a universal choice with a body is moved to an auxiliary atom
	auto gdt = normalize({{{F, ground_text("{a}. {b} :- a.")}}, Program()});
	REQUIRE(is_gdt(gdt.blocks[0].program));
	REQUIRE(gdt.blocks[0].program.universe().contains(make_atom("_gdt", {A("b")})));
	REQUIRE_THROWS_AS(normalize({{{F, ground_text("{a}. b :- not c. c :- not b.")}}, Program()}), InvalidInput);
}

TEST_CASE("from ASP(Q) to quantified programs", "[aspq]") {
	auto single = to_qlp({{{E, ground_text(P1)}}, Program()});
	REQUIRE(single.program == ground_text(P1));
	REQUIRE(single.prefix.size() == 1);
	REQUIRE(single.prefix[0].atoms == S({"a", "b", "c"}));

	AspqProgram pi{{{F, ground_text("{a}.")}, {E, ground_text(":- a.")}}, Program()};
	auto qp = to_qlp(pi);
	REQUIRE(qp.prefix.size() == 1);
	REQUIRE(qp.prefix[0].kind == F);
	REQUIRE(qp.prefix[0].atoms == S({"a"}));
	REQUIRE(qp.program == ground_text("{a}. :- a, not _alpha(1). _alpha(1) :- _alpha(0)."));
	REQUIRE_FALSE(eval_qlp(qp).satisfiable);
	REQUIRE_FALSE(coherent(pi));

	auto relaxed = to_qlp({{{E, ground_text("{a}.")}, {F, ground_text("{b}. :- a, b.")}, {E, ground_text(":- not a.")}}, Program()});
	REQUIRE(relaxed.program.universe().contains(make_atom("_alpha", {Symbol::number(1)})));
	REQUIRE(relaxed.program == ground_text("{a} :- not _alpha(0). {b}. _alpha(1) :- a, b. :- not a, not _alpha(2). _alpha(2) :- _alpha(1)."));
	REQUIRE(eval_qlp(relaxed).satisfiable);

	auto renamed = to_qlp({{{F, ground_text("{_alpha(1)}.")}, {E, ground_text(":- _alpha(1).")}}, Program()});
	REQUIRE(renamed.program.universe().contains(make_atom("__alpha", {Symbol::number(1)})));
	REQUIRE_THROWS_AS(to_qlp({{{E, ground_text("a.")}}, ground_text(":- a.")}), InvalidInput);
}

TEST_CASE("from quantified programs to ASP(Q)", "[aspq]") {
	auto p1 = ground_text(P1);
	auto pi = from_qlp({{{E, S({"a"})}, {F, S({"b"})}}, p1});
	REQUIRE(pi.blocks.size() == 3);
	REQUIRE(pi.blocks[0].program == ground_text("{a'}."));
	REQUIRE(pi.blocks[1].kind == F);
	REQUIRE(pi.blocks[2].program.size() == p1.size() + 4);
	REQUIRE(coherent(pi));
	REQUIRE_FALSE(coherent(from_qlp({{{E, S({"a"})}, {F, S({"b", "c"})}}, p1})));

	auto empty = from_qlp({{}, p1});
	REQUIRE(empty.blocks.size() == 1);
	REQUIRE(empty.blocks[0].program == p1);
	REQUIRE_THROWS_AS(from_qlp({{{E, S({"a"})}}, ground_text("{a}. b :- a'.")}), InvalidInput);
}

TEST_CASE("ASP(Q) text", "[aspq]") {
	auto pi = parse_aspq(R"(#const k = 2.
%@exists
d(1..k). { p(X) } :- d(X).
%@forall
{ q(X) } :- d(X).
%@check
:- q(X), not p(X).
)");
	REQUIRE(pi.blocks.size() == 2);
	REQUIRE(pi.blocks[1].kind == F);
	REQUIRE(pi.blocks[1].program.universe().contains(make_atom("q", {Symbol::number(2)})));
	REQUIRE(pi.check.size() == 2);
	REQUIRE(coherent(pi));
	auto again = parse_aspq(to_text(pi));
	REQUIRE(again.check == pi.check);
	REQUIRE(again.blocks[0].program.rules().size() == pi.blocks[0].program.rules().size());
	REQUIRE_THROWS_AS(parse_aspq("%@check\n:- a.\n%@exists\na."), SyntaxError);
	REQUIRE_THROWS_AS(parse_aspq("%@sometimes\na."), SyntaxError);
	REQUIRE_THROWS_AS(parse_aspq("a.\n%@exists\nb."), InvalidInput);
	REQUIRE_THROWS_AS(parse_aspq("% a comment\n"), InvalidInput);
}

TEST_CASE("ASP(Q) programs and their quantified programs agree", "[aspq][property]") {
	Rng rng(808);
	int coherent_count = 0;
	int total = 0;
	for (int i = 0; i < 300; ++i) {
		auto pi = random_aspq(rng);
		INFO(to_text(pi));
		bool expected = coherent(pi);
		auto nf = normalize(pi);
		REQUIRE(is_normal_form(nf));
		REQUIRE(coherent(nf) == expected);
		REQUIRE(eval_qlp(to_qlp(nf)).satisfiable == expected);
		coherent_count += expected;
		++total;
	}
	REQUIRE(coherent_count > 50);
	REQUIRE(total - coherent_count > 50);
}

TEST_CASE("quantified programs and their ASP(Q) programs agree", "[aspq][property]") {
	Rng rng(809);
	int sat = 0;
	for (int i = 0; i < 300; ++i) {
		auto p = random_program(rng, Shape{5, uniform(rng, 2, 8), 2, true, true, true});
		QuantifiedProgram qp{random_prefix(rng, p.universe(), 3), p};
		INFO(to_text(qp));
		auto r = eval_qlp(qp);
		auto pi = from_qlp(qp);
		REQUIRE(coherent(pi) == r.satisfiable);
		sat += r.satisfiable;
		if (r.witness) {
			// the primed guess of the outermost block reproduces the witness
			std::set<Atom> guess;
			for (const auto& a : *r.witness) { guess.insert(primed(a)); }
			AspqProgram fixed = pi;
			for (auto& rule : fixfact(guess, fixed.blocks[0].program.universe())) { fixed.blocks[0].program.add(rule); }
			REQUIRE(coherent(fixed));
		}
	}
	REQUIRE(sat > 50);
	REQUIRE(sat < 250);
}

TEST_CASE("conformant planning as an ASP(Q) program", "[aspq]") {
	auto dd2 = robot(2);
	for (int n : {2, 3}) {
		auto pi = conformant_aspq(dd2, n);
		bool expected = n == 3;
		REQUIRE(coherent(pi) == expected);
		auto qp = to_qlp(normalize(pi));
		REQUIRE(eval_qlp(qp).satisfiable == expected);
		REQUIRE(decide(encode_conformant(dd2, n).qlp, Backend{}).satisfiable == expected);
		// same quantifier shape as the direct encoding, up to the extra blocks
		REQUIRE(qp.prefix.front().kind == E);
		auto occ = encode_conformant(dd2, n).vocab.occ;
		REQUIRE(std::includes(qp.prefix.front().atoms.begin(), qp.prefix.front().atoms.end(), occ.begin(), occ.end()));
		REQUIRE(qp.prefix[1].kind == F);
		REQUIRE(qp.prefix[1].atoms == open_atoms(dd2));
	}
}
