#include <qasp/analysis.hpp>
#include <qasp/error.hpp>
#include <qasp/stable.hpp>

namespace qasp {

Solver::Solver(const Program& p) : program_(p.is_basic() ? p : compile_cardinality(p)), projection_(p.universe()) {
	atoms_.assign(program_.universe().begin(), program_.universe().end());
	for (std::size_t i = 0; i != atoms_.size(); ++i) { index_.emplace(atoms_[i], static_cast<int>(i)); }
	pos_occ_.resize(atoms_.size());
	choice_head_.assign(atoms_.size(), 0);
	for (const auto& r : program_.rules()) {
		IRule ir;
		if (r.type != HeadType::Constraint) {
			ir.head = index_.at(r.head_atom());
			ir.choice = r.type == HeadType::Choice;
			if (ir.choice) { choice_head_[ir.head] = 1; }
		}
		for (const auto& l : r.body) { (l.negated ? ir.neg : ir.pos).push_back(index_.at(l.atom)); }
		int id = static_cast<int>(rules_.size());
		for (int a : ir.pos) { pos_occ_[a].push_back(id); }
		rules_.push_back(std::move(ir));
	}
}

void Solver::least_model(const std::vector<Value>& assign, bool upper, std::vector<char>& out) const {
	out.assign(atoms_.size(), 0);
	std::vector<int> missing(rules_.size(), -1);
	std::vector<int> queue;
	auto derive = [&](int h) {
		if (!out[h]) {
			out[h] = 1;
			queue.push_back(h);
		}
	};
	for (std::size_t i = 0; i != rules_.size(); ++i) {
		const auto& r = rules_[i];
		if (r.head < 0) { continue; }
		bool eligible = true;
		if (upper) {
			if (assign[r.head] == False) { continue; }
			for (int n : r.neg) {
				if (assign[n] == True) {
					eligible = false;
					break;
				}
			}
		}
		else {
			if (r.choice && assign[r.head] != True) { continue; }
			for (int n : r.neg) {
				if (assign[n] != False) {
					eligible = false;
					break;
				}
			}
		}
		if (!eligible) { continue; }
		missing[i] = static_cast<int>(r.pos.size());
		if (missing[i] == 0) { derive(r.head); }
	}
	while (!queue.empty()) {
		int a = queue.back();
		queue.pop_back();
		for (int r : pos_occ_[a]) {
			if (missing[r] > 0 && --missing[r] == 0) { derive(rules_[r].head); }
		}
	}
}

bool Solver::propagate(std::vector<Value>& assign) const {
	std::vector<char> bound;
	for (bool changed = true; changed;) {
		changed = false;
		least_model(assign, true, bound);
		for (std::size_t a = 0; a != atoms_.size(); ++a) {
			if (bound[a]) { continue; }
			if (assign[a] == True) { return false; }
			if (assign[a] == Free) {
				assign[a] = False;
				changed = true;
			}
		}
		least_model(assign, false, bound);
		for (std::size_t a = 0; a != atoms_.size(); ++a) {
			if (!bound[a]) { continue; }
			if (assign[a] == False) { return false; }
			if (assign[a] == Free) {
				assign[a] = True;
				changed = true;
			}
		}
		for (const auto& r : rules_) {
			if (r.head >= 0) { continue; }
			int open = -1;
			bool open_neg = false;
			int n_open = 0;
			bool satisfied = false;
			auto visit = [&](int a, bool neg) {
				Value v = assign[a];
				if (v == Free) {
					++n_open;
					open = a;
					open_neg = neg;
				}
				else if ((v == True) == neg) { satisfied = true; }
			};
			for (int a : r.pos) { visit(a, false); }
			for (int a : r.neg) { visit(a, true); }
			if (satisfied || n_open > 1) { continue; }
			if (n_open == 0) { return false; }
			assign[open] = open_neg ? True : False;
			changed = true;
		}
	}
	return true;
}

bool Solver::search(std::vector<Value> assign, std::size_t limit, std::vector<Interpretation>& out) {
	++calls_;
	if (!propagate(assign)) { return false; }
	int pick = -1;
	for (std::size_t a = 0; a != atoms_.size(); ++a) {
		if (assign[a] != Free) { continue; }
		if (choice_head_[a]) {
			pick = static_cast<int>(a);
			break;
		}
		if (pick < 0) { pick = static_cast<int>(a); }
	}
	if (pick < 0) {
		Interpretation x;
		for (std::size_t a = 0; a != atoms_.size(); ++a) {
			if (assign[a] == True) { x.insert(atoms_[a]); }
		}
		if (!is_stable_model(program_, x)) { return false; }
		Interpretation proj;
		for (const auto& a : x) {
			if (projection_.contains(a)) { proj.insert(a); }
		}
		out.push_back(std::move(proj));
		return limit != 0 && out.size() >= limit;
	}
	for (Value v : {False, True}) {
		auto next = assign;
		next[pick] = v;
		if (search(std::move(next), limit, out)) { return true; }
	}
	return false;
}

std::vector<Interpretation> Solver::enumerate(std::size_t limit, const std::vector<Literal>& assumptions) {
	std::vector<Value> assign(atoms_.size(), Free);
	for (const auto& l : assumptions) {
		auto it = index_.find(l.atom);
		if (it == index_.end()) {
			if (!l.negated) { return {}; }
			continue;
		}
		Value want = l.negated ? False : True;
		if (assign[it->second] != Free && assign[it->second] != want) { return {}; }
		assign[it->second] = want;
	}
	std::vector<Interpretation> out;
	search(std::move(assign), limit, out);
	return out;
}

bool Solver::satisfiable(const std::vector<Literal>& assumptions) { return !enumerate(1, assumptions).empty(); }

std::optional<Interpretation> Solver::find(const std::vector<Literal>& assumptions) {
	auto ms = enumerate(1, assumptions);
	if (ms.empty()) { return std::nullopt; }
	return std::move(ms.front());
}

} // namespace qasp
