#include <qasp/error.hpp>
#include <qasp/stable.hpp>

namespace qasp {

namespace {
bool negative_part_holds(const std::vector<Literal>& ls, const Interpretation& x) {
	for (const auto& l : ls) {
		if (l.negated && x.contains(l.atom)) { return false; }
	}
	return true;
}

bool aggregates_hold(const Rule& r, const Interpretation& x) {
	for (const auto& a : r.aggregates) {
		if (!holds(a, x)) { return false; }
	}
	return true;
}
} // namespace

bool is_stable_model(const Program& p, const Interpretation& x) {
	for (const auto& a : x) {
		if (!p.universe().contains(a)) { return false; }
	}
	// X must be a model
	for (const auto& r : p.rules()) {
		if (!body_holds(r, x)) { continue; }
		switch (r.type) {
			case HeadType::Constraint: return false;
			case HeadType::Normal:
				if (!x.contains(r.head_atom())) { return false; }
				break;
			case HeadType::Choice:
				if (r.head_bound && !r.head_bound->holds(count(Aggregate{r.head, *r.head_bound}, x))) { return false; }
				break;
		}
	}
	// least model of the reduct
	struct Def {
		Atom head;
		std::vector<Atom> pos;
	};
	std::vector<Def> defs;
	for (const auto& r : p.rules()) {
		if (r.type == HeadType::Constraint || !negative_part_holds(r.body, x) || !aggregates_hold(r, x)) { continue; }
		for (const auto& e : r.head) {
			if (r.type == HeadType::Choice && !x.contains(e.literal.atom)) { continue; }
			if (!negative_part_holds(e.condition, x)) { continue; }
			Def d{e.literal.atom, {}};
			for (const auto& l : r.body) {
				if (!l.negated) { d.pos.push_back(l.atom); }
			}
			for (const auto& l : e.condition) {
				if (!l.negated) { d.pos.push_back(l.atom); }
			}
			defs.push_back(std::move(d));
		}
	}
	Interpretation lm;
	for (bool changed = true; changed;) {
		changed = false;
		for (const auto& d : defs) {
			if (lm.contains(d.head)) { continue; }
			bool ok = true;
			for (const auto& a : d.pos) {
				if (!lm.contains(a)) {
					ok = false;
					break;
				}
			}
			if (ok) {
				lm.insert(d.head);
				changed = true;
			}
		}
	}
	return lm == x;
}

std::vector<Interpretation> stable_models(const Program& p, const EnumerationOptions& opts) {
	std::set<Atom> heads;
	for (const auto& r : p.rules()) {
		for (const auto& e : r.head) { heads.insert(e.literal.atom); }
	}
	if (heads.size() > opts.max_atoms) {
		throw BudgetExceeded("stable model enumeration over " + std::to_string(heads.size()) + " atoms exceeds the cap of " +
		                     std::to_string(opts.max_atoms));
	}
	std::vector<Atom> hs(heads.begin(), heads.end());
	std::vector<Interpretation> out;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << hs.size()); ++mask) {
		Interpretation x;
		for (std::size_t i = 0; i != hs.size(); ++i) {
			if (mask >> i & 1U) { x.insert(hs[i]); }
		}
		if (is_stable_model(p, x)) { out.push_back(std::move(x)); }
	}
	return out;
}

} // namespace qasp
