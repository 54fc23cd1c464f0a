#pragma once

#include <qasp/program.hpp>

#include <set>
#include <utility>
#include <vector>

namespace qasp {

/// Rewrites cardinality constructs (choice elements with conditions, head
/// bounds, body aggregates) into basic rules. Counting uses sequential
/// counter atoms _cnt(Id,I,J) ("at least J of the first I elements hold"),
/// so stable models projected to the original universe are preserved.
/// Aggregates are non-recursive here: an aggregate must not depend
/// positively on the head of its own rule.
Program compile_cardinality(const Program& p);

/// Basic programs only; see compile_cardinality().
struct DependencyGraph {
	std::set<Atom> nodes;
	std::set<std::pair<Atom, Atom>> pos_edges; // (body atom, head atom)
	std::set<std::pair<Atom, Atom>> neg_edges;
};

DependencyGraph dependency_graph(const Program& p);

/// Strongly connected components of the given edges over the given nodes, in
/// topological order (a component precedes every component it reaches).
std::vector<std::vector<Atom>> strongly_connected(const std::set<Atom>& nodes,
                                                  const std::set<std::pair<Atom, Atom>>& edges);

bool is_stratified(const Program& p);
bool is_tight(const Program& p);
/// Components of the positive dependency graph that contain a cycle.
std::vector<std::vector<Atom>> positive_loops(const Program& p);

bool is_gdt(const Program& p);

struct GdtResult {
	Program program;
	std::set<Atom> aux;
};

/// Moves every choice rule {q} :- B that has a body, or whose atom also heads
/// another rule, to {_gdt(q)}. plus q :- _gdt(q), B. Throws InvalidInput when
/// the result is still not stratified.
GdtResult to_gdt(const Program& p);

} // namespace qasp
