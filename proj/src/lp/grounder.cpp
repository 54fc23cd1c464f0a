#include <qasp/error.hpp>
#include <qasp/grounder.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

namespace qasp {

using syntax::Agg;
using syntax::Elem;
using syntax::Lit;
using syntax::SRule;
using syntax::Term;

namespace {

using Consts = std::map<std::string, Term>;
using Binding = std::vector<std::pair<std::string, Symbol>>;
using Signature = std::pair<std::string, std::size_t>;

const Symbol* lookup(const Binding& b, const std::string& var) {
	for (const auto& [k, v] : b) {
		if (k == var) { return &v; }
	}
	return nullptr;
}

Term substitute_consts(const Term& t, const Consts& consts, int depth = 0) {
	if (depth > 64) { throw GroundingError("cyclic constant definition"); }
	if (t.kind == Term::Kind::Function && t.args.empty()) {
		if (auto it = consts.find(t.name); it != consts.end()) { return substitute_consts(it->second, consts, depth + 1); }
		return t;
	}
	Term out = t;
	for (auto& a : out.args) { a = substitute_consts(a, consts, depth); }
	return out;
}

void substitute_consts(Lit& l, const Consts& c) {
	l.atom = substitute_consts(l.atom, c);
	l.lhs = substitute_consts(l.lhs, c);
	l.rhs = substitute_consts(l.rhs, c);
}

void substitute_consts(Elem& e, const Consts& c) {
	substitute_consts(e.literal, c);
	for (auto& l : e.condition) { substitute_consts(l, c); }
}

void substitute_consts(SRule& r, const Consts& c) {
	for (auto& e : r.head) { substitute_consts(e, c); }
	if (r.head_bound) { r.head_bound->second = substitute_consts(r.head_bound->second, c); }
	for (auto& l : r.body) { substitute_consts(l, c); }
	for (auto& a : r.aggregates) {
		for (auto& e : a.elements) { substitute_consts(e, c); }
		a.bound = substitute_consts(a.bound, c);
	}
}

bool bound_under(const Term& t, const Binding& b) {
	if (t.kind == Term::Kind::Variable) { return lookup(b, t.name) != nullptr; }
	return std::all_of(t.args.begin(), t.args.end(), [&](const Term& a) { return bound_under(a, b); });
}

void collect_vars(const Term& t, std::set<std::string>& out) {
	if (t.kind == Term::Kind::Variable) { out.insert(t.name); }
	for (const auto& a : t.args) { collect_vars(a, out); }
}

bool has_interval(const Term& t) {
	if (t.kind == Term::Kind::Interval) { return true; }
	return std::any_of(t.args.begin(), t.args.end(), has_interval);
}

std::int64_t as_int(const Symbol& s) {
	if (!s.is_number()) { throw GroundingError("arithmetic on non-integer " + s.to_string()); }
	return s.value();
}

/// All values of a term under a binding; intervals expand to several values.
std::vector<Symbol> eval_all(const Term& t, const Binding& b) {
	switch (t.kind) {
		case Term::Kind::Number: return {Symbol::number(t.value)};
		case Term::Kind::Variable: {
			const Symbol* v = lookup(b, t.name);
			if (!v) { throw GroundingError("unbound variable " + t.name); }
			return {*v};
		}
		case Term::Kind::Minus: {
			std::vector<Symbol> out;
			for (const auto& v : eval_all(t.args[0], b)) { out.push_back(Symbol::number(-as_int(v))); }
			return out;
		}
		case Term::Kind::Binary: {
			std::vector<Symbol> out;
			auto ls = eval_all(t.args[0], b);
			auto rs = eval_all(t.args[1], b);
			for (const auto& l : ls) {
				for (const auto& r : rs) {
					std::int64_t x = as_int(l), y = as_int(r);
					std::int64_t v = t.op == '+' ? x + y : t.op == '-' ? x - y : x * y;
					out.push_back(Symbol::number(v));
				}
			}
			return out;
		}
		case Term::Kind::Interval: {
			std::vector<Symbol> out;
			for (const auto& l : eval_all(t.args[0], b)) {
				for (const auto& u : eval_all(t.args[1], b)) {
					for (std::int64_t i = as_int(l); i <= as_int(u); ++i) { out.push_back(Symbol::number(i)); }
				}
			}
			return out;
		}
		case Term::Kind::Function: {
			std::vector<std::vector<Symbol>> choices;
			for (const auto& a : t.args) { choices.push_back(eval_all(a, b)); }
			std::vector<Symbol> out;
			std::vector<Symbol> cur;
			std::function<void(std::size_t)> rec = [&](std::size_t i) {
				if (i == choices.size()) {
					out.push_back(Symbol::function(t.name, cur));
					return;
				}
				for (const auto& c : choices[i]) {
					cur.push_back(c);
					rec(i + 1);
					cur.pop_back();
				}
			};
			rec(0);
			return out;
		}
	}
	return {};
}

Symbol eval_one(const Term& t, const Binding& b) {
	if (has_interval(t)) { throw GroundingError("interval not allowed here: " + to_string(t)); }
	return eval_all(t, b).front();
}

/// Matches a pattern against a ground symbol, extending the binding.
bool match(const Term& p, const Symbol& s, Binding& b) {
	switch (p.kind) {
		case Term::Kind::Number: return s.is_number() && s.value() == p.value;
		case Term::Kind::Variable: {
			if (const Symbol* v = lookup(b, p.name)) { return *v == s; }
			b.emplace_back(p.name, s);
			return true;
		}
		case Term::Kind::Function: {
			if (!s.is_function() || s.name() != p.name || s.arity() != p.args.size()) { return false; }
			for (std::size_t i = 0; i != p.args.size(); ++i) {
				if (!match(p.args[i], s.args()[i], b)) { return false; }
			}
			return true;
		}
		case Term::Kind::Interval: throw GroundingError("interval not allowed in body atom: " + to_string(p));
		case Term::Kind::Minus:
		case Term::Kind::Binary: {
			if (bound_under(p, b)) { return eval_one(p, b) == s; }
			if (!s.is_number()) { return false; }
			// Solve linear patterns X+c, c+X, X-c, c-X, -X with one unknown side.
			if (p.kind == Term::Kind::Minus) { return match(p.args[0], Symbol::number(-s.value()), b); }
			const Term& l = p.args[0];
			const Term& r = p.args[1];
			bool lb = bound_under(l, b), rb = bound_under(r, b);
			if (p.op == '+' && lb != rb) {
				std::int64_t known = as_int(eval_one(lb ? l : r, b));
				return match(lb ? r : l, Symbol::number(s.value() - known), b);
			}
			if (p.op == '-' && lb != rb) {
				if (rb) { return match(l, Symbol::number(s.value() + as_int(eval_one(r, b))), b); }
				return match(r, Symbol::number(as_int(eval_one(l, b)) - s.value()), b);
			}
			throw GroundingError("cannot solve term " + to_string(p) + " for its variables");
		}
	}
	return false;
}

Signature signature(const Term& atom) { return {atom.name, atom.args.size()}; }
Signature signature(const Symbol& atom) { return {atom.name(), atom.arity()}; }

class AtomIndex {
public:
	bool insert(const Symbol& a) {
		if (!all_.insert(a).second) { return false; }
		by_sig_[signature(a)].push_back(a);
		return true;
	}
	bool contains(const Symbol& a) const { return all_.contains(a); }
	const std::vector<Symbol>& candidates(const Signature& s) const {
		static const std::vector<Symbol> none;
		auto it = by_sig_.find(s);
		return it == by_sig_.end() ? none : it->second;
	}
	const std::set<Symbol>& all() const { return all_; }

private:
	std::set<Symbol> all_;
	std::map<Signature, std::vector<Symbol>> by_sig_;
};

struct Ctx {
	const std::set<Signature>* domain = nullptr;
	const AtomIndex* facts = nullptr;    // domain facts
	const AtomIndex* possible = nullptr; // over-approximation of derivable atoms
	bool check_ground = false;           // also check literals that are ground when reached
};

bool is_domain(const Ctx& c, const Lit& l) { return c.domain->contains(signature(l.atom)); }

bool comparison_holds(const Lit& l, const Binding& b) {
	Symbol lhs = eval_one(l.lhs, b);
	auto rs = eval_all(l.rhs, b);
	if (has_interval(l.rhs)) {
		bool in = std::find(rs.begin(), rs.end(), lhs) != rs.end();
		if (l.op == CmpOp::Eq) { return in; }
		if (l.op == CmpOp::Ne) { return !in; }
		throw GroundingError("interval only allowed with = and !=");
	}
	const Symbol& rhs = rs.front();
	switch (l.op) {
		case CmpOp::Eq: return lhs == rhs;
		case CmpOp::Ne: return lhs != rhs;
		case CmpOp::Lt: return lhs < rhs;
		case CmpOp::Le: return lhs <= rhs;
		case CmpOp::Gt: return lhs > rhs;
		case CmpOp::Ge: return lhs >= rhs;
	}
	return false;
}

/// Enumerates bindings satisfying the binding items; see ground_detailed.
void search(std::vector<const Lit*> pending, Binding& b, const Ctx& c, const std::function<void(const Binding&)>& cb) {
	auto take = [&](std::size_t i) {
		auto rest = pending;
		rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
		return rest;
	};
	auto match_against = [&](std::size_t i, const AtomIndex& idx) {
		auto rest = take(i);
		const Lit& l = *pending[i];
		for (const auto& cand : idx.candidates(signature(l.atom))) {
			std::size_t mark = b.size();
			if (match(l.atom, cand, b)) { search(rest, b, c, cb); }
			b.resize(mark);
		}
	};
	// 1. ground comparisons and ground positive literals
	for (std::size_t i = 0; i != pending.size(); ++i) {
		const Lit& l = *pending[i];
		if (l.kind == Lit::Kind::Compare && bound_under(l.lhs, b) && bound_under(l.rhs, b)) {
			if (!comparison_holds(l, b)) { return; }
			search(take(i), b, c, cb);
			return;
		}
		if (l.kind == Lit::Kind::Atom && !l.negated && bound_under(l.atom, b)) {
			if (c.check_ground) {
				Symbol a = eval_one(l.atom, b);
				const AtomIndex& idx = is_domain(c, l) ? *c.facts : *c.possible;
				if (!idx.contains(a)) { return; }
			}
			search(take(i), b, c, cb);
			return;
		}
	}
	// 2. domain literals
	for (std::size_t i = 0; i != pending.size(); ++i) {
		const Lit& l = *pending[i];
		if (l.kind == Lit::Kind::Atom && !l.negated && is_domain(c, l)) {
			match_against(i, *c.facts);
			return;
		}
	}
	// 3. binders X = t
	for (std::size_t i = 0; i != pending.size(); ++i) {
		const Lit& l = *pending[i];
		if (l.kind != Lit::Kind::Compare || l.op != CmpOp::Eq) { continue; }
		const Term* var = nullptr;
		const Term* val = nullptr;
		if (l.lhs.kind == Term::Kind::Variable && !lookup(b, l.lhs.name) && bound_under(l.rhs, b)) {
			var = &l.lhs;
			val = &l.rhs;
		}
		else if (l.rhs.kind == Term::Kind::Variable && !lookup(b, l.rhs.name) && bound_under(l.lhs, b)) {
			var = &l.rhs;
			val = &l.lhs;
		}
		if (!var) { continue; }
		auto rest = take(i);
		for (const auto& v : eval_all(*val, b)) {
			b.emplace_back(var->name, v);
			search(rest, b, c, cb);
			b.pop_back();
		}
		return;
	}
	// 4. other positive literals
	for (std::size_t i = 0; i != pending.size(); ++i) {
		const Lit& l = *pending[i];
		if (l.kind == Lit::Kind::Atom && !l.negated) {
			match_against(i, *c.possible);
			return;
		}
	}
	// only negative literals and non-binding comparisons remain
	std::set<std::string> unbound;
	for (const Lit* l : pending) {
		std::set<std::string> vs;
		if (l->kind == Lit::Kind::Atom) { collect_vars(l->atom, vs); }
		else {
			collect_vars(l->lhs, vs);
			collect_vars(l->rhs, vs);
		}
		for (const auto& v : vs) {
			if (!lookup(b, v)) { unbound.insert(v); }
		}
	}
	if (!unbound.empty()) { throw GroundingError("unsafe variable " + *unbound.begin()); }
	for (const Lit* l : pending) {
		if (l->kind == Lit::Kind::Compare && !comparison_holds(*l, b)) { return; }
	}
	cb(b);
}

std::vector<const Lit*> pointers(const std::vector<Lit>& ls) {
	std::vector<const Lit*> out;
	for (const auto& l : ls) { out.push_back(&l); }
	return out;
}

Literal instantiate(const Lit& l, const Binding& b) { return {eval_one(l.atom, b), l.negated}; }

std::string context(const SRule& r) { return "line " + std::to_string(r.line) + ": "; }

class Grounder {
public:
	Grounder(const syntax::ParsedProgram& p, const GroundOptions& opts) : opts_(opts) {
		for (auto r : p.rules) {
			substitute_consts(r, p.consts);
			rules_.push_back(std::move(r));
		}
	}

	GroundResult run() {
		classify();
		Ctx c{&domain_, &facts_, &possible_, true};
		// domain facts; domain rules are definite, so a naive fixpoint suffices
		for (bool changed = true; changed;) {
			changed = false;
			for (const auto& r : rules_) {
				if (r.type != HeadType::Normal || !domain_.contains(signature(r.head[0].literal.atom))) { continue; }
				guarded(r, [&] {
					Binding b;
					search(pointers(r.body), b, c, [&](const Binding& bb) {
						for (const auto& a : eval_all(r.head[0].literal.atom, bb)) { changed |= facts_.insert(a); }
					});
				});
			}
		}
		for (const auto& a : facts_.all()) { possible_.insert(a); }
		for (const auto& a : opts_.seeds) { possible_.insert(a); }
		// possibly derivable atoms, ignoring negation and aggregates
		for (bool changed = true; changed;) {
			changed = false;
			for (const auto& r : rules_) {
				if (r.type == HeadType::Constraint) { continue; }
				guarded(r, [&] {
					Binding b;
					search(pointers(positive_only(r.body)), b, c, [&](const Binding& bb) {
						for_head_atoms(r, bb, c, [&](const Symbol& a) { changed |= possible_.insert(a); });
					});
				});
			}
		}
		GroundResult out;
		out.domain_facts = facts_.all();
		Ctx fc{&domain_, &facts_, &possible_, false};
		for (std::size_t i = 0; i != rules_.size(); ++i) {
			const auto& r = rules_[i];
			guarded(r, [&] {
				Binding b;
				search(pointers(r.body), b, fc, [&](const Binding& bb) {
					for (auto& g : instantiate_rule(r, bb, fc)) { out.rules.push_back({std::move(g), i}); }
				});
			});
		}
		return out;
	}

private:
	template <class F>
	void guarded(const SRule& r, F&& f) {
		try {
			f();
		}
		catch (const GroundingError& e) {
			std::string msg = e.what();
			if (msg.rfind("line ", 0) == 0) { throw; }
			throw GroundingError(context(r) + msg);
		}
	}

	static std::vector<Lit> positive_only(const std::vector<Lit>& body) {
		std::vector<Lit> out;
		for (const auto& l : body) {
			if (l.kind == Lit::Kind::Compare || !l.negated) { out.push_back(l); }
		}
		return out;
	}

	void classify() {
		std::set<Signature> defined;
		std::set<Signature> nondomain;
		for (const auto& a : opts_.seeds) { nondomain.insert(signature(a)); }
		for (const auto& r : rules_) {
			for (const auto& e : r.head) {
				defined.insert(signature(e.literal.atom));
				if (r.type == HeadType::Choice) { nondomain.insert(signature(e.literal.atom)); }
			}
		}
		// every body predicate is a candidate, undefined ones are empty domains
		std::set<Signature> all = defined;
		for (const auto& r : rules_) {
			auto add = [&](const Lit& l) {
				if (l.kind == Lit::Kind::Atom) { all.insert(signature(l.atom)); }
			};
			for (const auto& l : r.body) { add(l); }
			for (const auto& a : r.aggregates) {
				for (const auto& e : a.elements) {
					add(e.literal);
					for (const auto& l : e.condition) { add(l); }
				}
			}
			for (const auto& e : r.head) {
				for (const auto& l : e.condition) { add(l); }
			}
		}
		for (const auto& s : all) {
			if (!nondomain.contains(s)) { domain_.insert(s); }
		}
		for (bool changed = true; changed;) {
			changed = false;
			for (const auto& r : rules_) {
				if (r.type != HeadType::Normal) { continue; }
				auto h = signature(r.head[0].literal.atom);
				if (!domain_.contains(h)) { continue; }
				bool ok = r.aggregates.empty();
				for (const auto& l : r.body) {
					if (l.kind == Lit::Kind::Atom && (l.negated || !domain_.contains(signature(l.atom)))) { ok = false; }
				}
				if (!ok) {
					domain_.erase(h);
					changed = true;
				}
			}
		}
	}

	/// Expands the elements of a head or aggregate under a global binding.
	std::vector<Element> expand(const std::vector<Elem>& elems, const Binding& b, const Ctx& c, bool literal_binds) {
		std::vector<Element> out;
		for (const auto& e : elems) {
			std::vector<const Lit*> items = pointers(e.condition);
			if (literal_binds && e.literal.kind == Lit::Kind::Atom && !e.literal.negated) { items.push_back(&e.literal); }
			Binding local = b;
			search(items, local, c, [&](const Binding& bb) {
				std::vector<Literal> cond;
				for (const auto& l : e.condition) {
					if (l.kind == Lit::Kind::Compare) { continue; }
					Literal g = instantiate(l, bb);
					if (is_domain(c, l)) {
						if (facts_.contains(g.atom) == g.negated) { return; }
						continue;
					}
					cond.push_back(std::move(g));
				}
				if (e.literal.kind == Lit::Kind::Compare) { throw GroundingError("comparison is not allowed as element"); }
				for (const auto& a : eval_all(e.literal.atom, bb)) {
					out.push_back({{a, e.literal.negated}, cond});
				}
			});
		}
		return out;
	}

	void for_head_atoms(const SRule& r, const Binding& b, const Ctx& c, const std::function<void(const Symbol&)>& f) {
		if (r.type == HeadType::Normal) {
			for (const auto& a : eval_all(r.head[0].literal.atom, b)) { f(a); }
			return;
		}
		for (const auto& e : expand(r.head, b, c, false)) { f(e.literal.atom); }
	}

	std::vector<Rule> instantiate_rule(const SRule& r, const Binding& b, const Ctx& c) {
		Rule base;
		base.type = r.type;
		for (const auto& l : r.body) {
			if (l.kind == Lit::Kind::Atom) { base.body.push_back(instantiate(l, b)); }
		}
		for (const auto& a : r.aggregates) {
			Aggregate g;
			g.elements = expand(a.elements, b, c, true);
			g.bound = {a.op, as_int(eval_one(a.bound, b))};
			base.aggregates.push_back(std::move(g));
		}
		std::vector<Rule> out;
		if (r.type == HeadType::Normal) {
			for (const auto& h : eval_all(r.head[0].literal.atom, b)) {
				Rule g = base;
				g.head.push_back({Literal::pos(h), {}});
				g.canonicalize();
				out.push_back(std::move(g));
			}
			return out;
		}
		if (r.type == HeadType::Choice) {
			base.head = expand(r.head, b, c, false);
			if (r.head_bound) { base.head_bound = Bound{r.head_bound->first, as_int(eval_one(r.head_bound->second, b))}; }
		}
		base.canonicalize();
		out.push_back(std::move(base));
		return out;
	}

	GroundOptions opts_;
	std::vector<SRule> rules_;
	std::set<Signature> domain_;
	AtomIndex facts_;
	AtomIndex possible_;
};

} // namespace

Program GroundResult::program() const {
	Program p;
	for (const auto& g : rules) { p.add(g.rule); }
	return p;
}

GroundResult ground_detailed(const syntax::ParsedProgram& p, const GroundOptions& opts) { return Grounder(p, opts).run(); }

Program ground(const syntax::ParsedProgram& p, const GroundOptions& opts) { return ground_detailed(p, opts).program(); }

Program ground_text(std::string_view text, const GroundOptions& opts) { return ground(syntax::parse(text), opts); }

Symbol evaluate(const syntax::Term& t, const std::map<std::string, syntax::Term>& consts) {
	return eval_one(substitute_consts(t, consts), {});
}

} // namespace qasp
