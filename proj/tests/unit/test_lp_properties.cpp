#include "generators.hpp"

#include <qasp/analysis.hpp>
#include <qasp/grounder.hpp>
#include <qasp/stable.hpp>

#include <catch_amalgamated.hpp>

using namespace qasp;
using namespace qasp::testing;

namespace {
std::set<Interpretation> as_set(const std::vector<Interpretation>& v) { return {v.begin(), v.end()}; }

std::set<Interpretation> project(const std::vector<Interpretation>& ms, const std::set<Atom>& keep) {
	std::set<Interpretation> out;
	for (const auto& m : ms) {
		Interpretation x;
		for (const auto& a : m) {
			if (keep.contains(a)) { x.insert(a); }
		}
		out.insert(x);
	}
	return out;
}

std::vector<Interpretation> all_subsets(const std::set<Atom>& u) {
	std::vector<Atom> as(u.begin(), u.end());
	std::vector<Interpretation> out;
	for (std::uint64_t m = 0; m < (std::uint64_t{1} << as.size()); ++m) {
		Interpretation x;
		for (std::size_t i = 0; i != as.size(); ++i) {
			if (m >> i & 1U) { x.insert(as[i]); }
		}
		out.push_back(x);
	}
	return out;
}
} // namespace

TEST_CASE("membership agrees with enumeration", "[lp][property]") {
	Rng rng(11);
	for (int i = 0; i < 200; ++i) {
		auto p = random_program(rng, {6, uniform(rng, 1, 10)});
		auto sms = as_set(stable_models(p));
		for (const auto& x : all_subsets(p.universe())) { REQUIRE(sms.contains(x) == is_stable_model(p, x)); }
	}
}

TEST_CASE("stratified normal programs have one stable model", "[lp][property]") {
	Rng rng(12);
	for (int i = 0; i < 200; ++i) {
		auto p = random_stratified(rng, {7, uniform(rng, 1, 12)});
		REQUIRE(is_stratified(p));
		REQUIRE(stable_models(p).size() == 1);
	}
}

TEST_CASE("search solver agrees with enumeration", "[lp][property]") {
	Rng rng(13);
	for (int i = 0; i < 500; ++i) {
		auto p = random_program(rng, {uniform(rng, 1, 8), uniform(rng, 1, 14)});
		Solver s(p);
		INFO(to_string(p));
		REQUIRE(as_set(s.enumerate()) == as_set(stable_models(p)));
	}
	for (int i = 0; i < 200; ++i) {
		auto p = random_extended(rng, {uniform(rng, 1, 7), uniform(rng, 1, 10)});
		Solver s(p);
		INFO(to_string(p));
		REQUIRE(as_set(s.enumerate()) == as_set(stable_models(p)));
	}
}

TEST_CASE("search solver respects assumptions", "[lp][property]") {
	Rng rng(14);
	for (int i = 0; i < 200; ++i) {
		auto p = random_program(rng, {6, uniform(rng, 1, 10)});
		std::vector<Atom> u(p.universe().begin(), p.universe().end());
		std::vector<Literal> as;
		for (const auto& a : u) {
			if (coin(rng, 0.3)) { as.push_back({a, coin(rng)}); }
		}
		std::set<Interpretation> expected;
		for (const auto& m : stable_models(p)) {
			if (std::all_of(as.begin(), as.end(), [&](const Literal& l) { return holds(l, m); })) { expected.insert(m); }
		}
		Solver s(p);
		REQUIRE(as_set(s.enumerate(0, as)) == expected);
	}
}

TEST_CASE("cardinality compilation preserves stable models", "[lp][property]") {
	Rng rng(15);
	int checked = 0;
	for (int i = 0; i < 300; ++i) {
		auto p = random_extended(rng, {uniform(rng, 1, 7), uniform(rng, 1, 8)});
		auto c = compile_cardinality(p);
		INFO(to_string(p));
		REQUIRE(c.is_basic());
		if (c.universe().size() > 18) { continue; }
		REQUIRE(project(stable_models(c), p.universe()) == as_set(stable_models(p)));
		++checked;
	}
	REQUIRE(checked > 150);
}

TEST_CASE("GDT normalization preserves stable models", "[lp][property]") {
	Rng rng(16);
	int checked = 0;
	for (int i = 0; i < 300; ++i) {
		auto p = random_program(rng, {6, uniform(rng, 1, 10)});
		if (!is_stratified(p)) { continue; }
		auto r = to_gdt(p);
		REQUIRE(is_gdt(r.program));
		REQUIRE(project(stable_models(r.program), p.universe()) == as_set(stable_models(p)));
		++checked;
	}
	REQUIRE(checked > 50);
}

TEST_CASE("grounding is idempotent on ground programs", "[lp][property]") {
	Rng rng(17);
	for (int i = 0; i < 200; ++i) {
		auto p = i % 2 ? random_program(rng, {6, 8}) : random_extended(rng, {6, 8});
		Program atoms_only;
		for (const auto& r : p.rules()) { atoms_only.add(r); }
		auto text = to_string(atoms_only);
		INFO(text);
		auto q = ground_text(text);
		REQUIRE(to_string(q) == text);
	}
}
