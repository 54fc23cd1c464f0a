#include <qasp/analysis.hpp>
#include <qasp/error.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace qasp {

namespace {
void require_basic(const Program& p) {
	for (const auto& r : p.rules()) {
		if (!r.is_basic()) { throw InvalidInput("expected a basic program, found: " + to_string(r)); }
	}
}
} // namespace

DependencyGraph dependency_graph(const Program& p) {
	require_basic(p);
	DependencyGraph g;
	g.nodes = p.universe();
	for (const auto& r : p.rules()) {
		if (r.type == HeadType::Constraint) { continue; }
		const Atom& h = r.head_atom();
		for (const auto& l : r.body) { (l.negated ? g.neg_edges : g.pos_edges).emplace(l.atom, h); }
	}
	return g;
}

std::vector<std::vector<Atom>> strongly_connected(const std::set<Atom>& nodes, const std::set<std::pair<Atom, Atom>>& edges) {
	std::vector<Atom> ids(nodes.begin(), nodes.end());
	std::map<Atom, int> idx;
	for (std::size_t i = 0; i != ids.size(); ++i) { idx[ids[i]] = static_cast<int>(i); }
	std::vector<std::vector<int>> succ(ids.size());
	for (const auto& [a, b] : edges) { succ[idx.at(a)].push_back(idx.at(b)); }
	// iterative Tarjan
	int n = static_cast<int>(ids.size()), counter = 0;
	std::vector<int> index(n, -1), low(n, 0), stack;
	std::vector<char> on_stack(n, 0);
	std::vector<std::vector<Atom>> comps;
	for (int root = 0; root != n; ++root) {
		if (index[root] != -1) { continue; }
		std::vector<std::pair<int, std::size_t>> call{{root, 0}};
		index[root] = low[root] = counter++;
		stack.push_back(root);
		on_stack[root] = 1;
		while (!call.empty()) {
			auto& [v, i] = call.back();
			if (i < succ[v].size()) {
				int w = succ[v][i++];
				if (index[w] == -1) {
					index[w] = low[w] = counter++;
					stack.push_back(w);
					on_stack[w] = 1;
					call.emplace_back(w, 0);
				}
				else if (on_stack[w]) { low[v] = std::min(low[v], index[w]); }
				continue;
			}
			if (low[v] == index[v]) {
				std::vector<Atom> comp;
				int w;
				do {
					w = stack.back();
					stack.pop_back();
					on_stack[w] = 0;
					comp.push_back(ids[w]);
				} while (w != v);
				std::sort(comp.begin(), comp.end());
				comps.push_back(std::move(comp));
			}
			int done = v;
			call.pop_back();
			if (!call.empty()) { low[call.back().first] = std::min(low[call.back().first], low[done]); }
		}
	}
	// Tarjan emits sinks first
	std::reverse(comps.begin(), comps.end());
	return comps;
}

bool is_stratified(const Program& p) {
	auto g = dependency_graph(p);
	auto all = g.pos_edges;
	all.insert(g.neg_edges.begin(), g.neg_edges.end());
	std::map<Atom, std::size_t> comp;
	auto comps = strongly_connected(g.nodes, all);
	for (std::size_t i = 0; i != comps.size(); ++i) {
		for (const auto& a : comps[i]) { comp[a] = i; }
	}
	return std::none_of(g.neg_edges.begin(), g.neg_edges.end(),
	                    [&](const auto& e) { return comp[e.first] == comp[e.second]; });
}

std::vector<std::vector<Atom>> positive_loops(const Program& p) {
	auto g = dependency_graph(p);
	std::vector<std::vector<Atom>> out;
	for (auto& c : strongly_connected(g.nodes, g.pos_edges)) {
		if (c.size() > 1 || g.pos_edges.contains({c[0], c[0]})) { out.push_back(std::move(c)); }
	}
	return out;
}

bool is_tight(const Program& p) { return positive_loops(p).empty(); }

bool is_gdt(const Program& p) {
	if (!is_stratified(p)) { return false; }
	std::map<Atom, int> heads;
	for (const auto& r : p.rules()) {
		if (r.type != HeadType::Constraint) { ++heads[r.head_atom()]; }
	}
	for (const auto& r : p.rules()) {
		if (r.type != HeadType::Choice) { continue; }
		if (!r.body.empty() || heads[r.head_atom()] > 1) { return false; }
	}
	return true;
}

GdtResult to_gdt(const Program& p) {
	require_basic(p);
	std::map<Atom, int> heads;
	for (const auto& r : p.rules()) {
		if (r.type != HeadType::Constraint) { ++heads[r.head_atom()]; }
	}
	auto fresh = [&](const Atom& q) {
		Atom a = wrap("_gdt", q);
		while (p.universe().contains(a)) { a = wrap("_gdt", a); }
		return a;
	};
	GdtResult out;
	for (const auto& a : p.universe()) { out.program.declare(a); }
	for (const auto& r : p.rules()) {
		if (r.type != HeadType::Choice || (r.body.empty() && heads[r.head_atom()] == 1)) {
			out.program.add(r);
			continue;
		}
		Atom aux = fresh(r.head_atom());
		out.aux.insert(aux);
		out.program.add(Rule::choice(aux));
		auto body = r.body;
		body.push_back(Literal::pos(aux));
		out.program.add(Rule::normal(r.head_atom(), body));
	}
	if (!is_stratified(out.program)) {
		throw InvalidInput("program is not stratified; rewriting choice rules cannot bring it into GDT form");
	}
	return out;
}

} // namespace qasp
