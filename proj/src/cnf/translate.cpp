#include <qasp/analysis.hpp>
#include <qasp/cnf.hpp>
#include <qasp/error.hpp>

#include <algorithm>
#include <cstdlib>

namespace qasp {

void CnfFormula::add(Clause c) {
	std::sort(c.begin(), c.end(), [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
	c.erase(std::unique(c.begin(), c.end()), c.end());
	for (std::size_t i = 0; i + 1 < c.size(); ++i) {
		if (c[i] == -c[i + 1]) { return; }
	}
	for (int l : c) { num_vars = std::max(num_vars, std::abs(l)); }
	if (seen_.insert(c).second) { clauses.push_back(std::move(c)); }
}

void AtomMap::add(const Atom& a, int v) {
	var.emplace(a, v);
	atom.emplace(v, a);
}

int AtomMap::at(const Atom& a) const {
	auto it = var.find(a);
	if (it == var.end()) { throw InvalidInput("atom " + a.to_string() + " has no variable"); }
	return it->second;
}

std::string AtomMap::dump() const {
	std::string out;
	for (const auto& [v, a] : atom) { out += a.to_string() + "\t" + std::to_string(v) + "\n"; }
	return out;
}

namespace {

class Translator {
public:
	explicit Translator(const Program& p) : basic_(p.is_basic() ? p : compile_cardinality(p)) {
		int v = 0;
		for (const auto& a : p.universe()) { out_.map.add(a, ++v); }
		for (const auto& a : basic_.universe()) {
			if (!p.universe().contains(a)) { aux_.emplace(a, ++v); }
		}
		out_.cnf.num_vars = v;
	}

	Translation run(bool ranking) {
		if (!ranking && !is_tight(basic_)) { throw InvalidInput("completion requires a tight program"); }
		std::map<Atom, std::vector<int>> support; // head -> body literal or variable per rule
		std::vector<int> body_of(basic_.rules().size());
		for (std::size_t i = 0; i != basic_.rules().size(); ++i) {
			const Rule& r = basic_.rules()[i];
			std::vector<int> lits;
			for (const auto& l : r.body) { lits.push_back(l.negated ? -var(l.atom) : var(l.atom)); }
			if (r.type == HeadType::Constraint) {
				Clause c;
				for (int l : lits) { c.push_back(-l); }
				out_.cnf.add(c);
				continue;
			}
			int h = var(r.head_atom());
			if (lits.empty()) {
				body_of[i] = 0;
				if (r.type == HeadType::Normal) { out_.cnf.add({h}); }
				support[r.head_atom()].push_back(0);
				continue;
			}
			int b = lits.size() == 1 ? lits[0] : body(lits);
			body_of[i] = b;
			if (r.type == HeadType::Normal) { out_.cnf.add({-b, h}); }
			support[r.head_atom()].push_back(b);
		}
		for (const auto& a : basic_.universe()) {
			auto it = support.find(a);
			if (it == support.end()) {
				out_.cnf.add({-var(a)});
				continue;
			}
			if (std::find(it->second.begin(), it->second.end(), 0) != it->second.end()) { continue; }
			Clause c{-var(a)};
			c.insert(c.end(), it->second.begin(), it->second.end());
			out_.cnf.add(c);
		}
		if (ranking) { rank(body_of); }
		return std::move(out_);
	}

private:
	int var(const Atom& a) const {
		if (auto it = out_.map.var.find(a); it != out_.map.var.end()) { return it->second; }
		return aux_.at(a);
	}

	// shared Tseitin variable b <-> conjunction of lits
	int body(std::vector<int> lits) {
		std::sort(lits.begin(), lits.end());
		if (auto it = bodies_.find(lits); it != bodies_.end()) { return it->second; }
		int b = out_.cnf.fresh();
		Clause back{b};
		for (int l : lits) {
			out_.cnf.add({-b, l});
			back.push_back(-l);
		}
		out_.cnf.add(back);
		bodies_.emplace(lits, b);
		return b;
	}

	void rank(const std::vector<int>& body_of) {
		for (const auto& loop : positive_loops(basic_)) {
			std::set<Atom> in(loop.begin(), loop.end());
			int bits = 1;
			while ((std::size_t{1} << bits) < loop.size()) { ++bits; }
			std::map<Atom, std::vector<int>> rank_bits;
			for (const auto& a : loop) {
				auto& rb = rank_bits[a];
				for (int i = 0; i < bits; ++i) { rb.push_back(out_.cnf.fresh()); }
			}
			std::map<std::pair<Atom, Atom>, int> less;
			auto lt = [&](const Atom& x, const Atom& y) {
				auto key = std::make_pair(x, y);
				if (auto it = less.find(key); it != less.end()) { return it->second; }
				const auto& xs = rank_bits[x];
				const auto& ys = rank_bits[y];
				int prev = 0;
				for (int i = 0; i < bits; ++i) {
					int l = out_.cnf.fresh();
					int xi = xs[static_cast<std::size_t>(i)], yi = ys[static_cast<std::size_t>(i)];
					out_.cnf.add({-l, -xi, yi});
					out_.cnf.add(prev ? Clause{-l, -xi, prev} : Clause{-l, -xi});
					out_.cnf.add(prev ? Clause{-l, yi, prev} : Clause{-l, yi});
					prev = l;
				}
				less.emplace(key, prev);
				return prev;
			};
			std::map<Atom, Clause> supported;
			for (std::size_t i = 0; i != basic_.rules().size(); ++i) {
				const Rule& r = basic_.rules()[i];
				if (r.type == HeadType::Constraint || !in.contains(r.head_atom())) { continue; }
				const Atom& h = r.head_atom();
				int s = out_.cnf.fresh();
				if (body_of[i] != 0) { out_.cnf.add({-s, body_of[i]}); }
				for (const auto& p : r.pos_body()) {
					if (in.contains(p)) { out_.cnf.add({-s, lt(p, h)}); }
				}
				supported[h].push_back(s);
			}
			for (const auto& a : loop) {
				Clause c{-var(a)};
				c.insert(c.end(), supported[a].begin(), supported[a].end());
				out_.cnf.add(c);
			}
		}
	}

	Program basic_;
	Translation out_;
	std::map<Atom, int> aux_;
	std::map<std::vector<int>, int> bodies_;
};

} // namespace

Translation completion(const Program& p) { return Translator(p).run(false); }
Translation level_ranking(const Program& p) { return Translator(p).run(true); }

Translation translate(const Program& p) {
	Translator t(p);
	return t.run(!is_tight(p.is_basic() ? p : compile_cardinality(p)));
}

std::vector<Clause> fixbf(const std::set<Atom>& x, const std::set<Atom>& y, const AtomMap& map) {
	std::vector<Clause> out;
	for (const auto& a : x) {
		if (!y.contains(a)) { throw InvalidInput("fixbf: " + a.to_string() + " is not in the scope"); }
	}
	for (const auto& a : y) { out.push_back({x.contains(a) ? map.at(a) : -map.at(a)}); }
	return out;
}

} // namespace qasp
