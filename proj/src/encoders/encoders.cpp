#include <qasp/analysis.hpp>
#include <qasp/encoders.hpp>
#include <qasp/error.hpp>
#include <qasp/grounder.hpp>

#include <functional>
#include <string>

namespace qasp {

const char* to_string(Mode m) {
	switch (m) {
	case Mode::Classical: return "classical";
	case Mode::Conformant: return "conformant";
	case Mode::Assumption: return "assumption";
	case Mode::Conditional: return "conditional";
	}
	return "?";
}

Mode parse_mode(std::string_view name) {
	for (Mode m : {Mode::Classical, Mode::Conformant, Mode::Assumption, Mode::Conditional}) {
		if (name == to_string(m)) { return m; }
	}
	throw InvalidInput("unknown planning mode: " + std::string(name));
}

Atom holds_at(const Atom& fluent, int t) { return make_atom("h", {fluent, Symbol::number(t)}); }
Atom occurs_at(const Atom& action, int t) { return make_atom("occ", {action, Symbol::number(t)}); }
Atom alpha_at(int t) { return make_atom("alpha", {Symbol::number(t)}); }

namespace {

Atom time_atom(int t) { return make_atom("t", {Symbol::number(t)}); }
Atom obs_at(int t) { return make_atom("obs", {Symbol::function("true"), Symbol::number(t)}); }

Rule map_atoms(const Rule& r, const std::function<Atom(const Atom&)>& f) {
	Rule out = r;
	auto lit = [&](Literal& l) { l.atom = f(l.atom); };
	auto element = [&](Element& e) {
		lit(e.literal);
		for (auto& c : e.condition) { lit(c); }
	};
	for (auto& e : out.head) { element(e); }
	for (auto& l : out.body) { lit(l); }
	for (auto& a : out.aggregates) {
		for (auto& e : a.elements) { element(e); }
	}
	out.canonicalize();
	return out;
}

void check_horizon(int n) {
	if (n < 1) { throw InvalidInput("the horizon must be positive, got " + std::to_string(n)); }
}

struct InitialRules {
	Program program;
	bool rewritten = false;
};

InitialRules gdt_initial(const PlanningDescription& dd) {
	InitialRules out{compile_cardinality(dd.initial), false};
	if (!is_gdt(out.program)) {
		out.program = to_gdt(out.program).program;
		out.rewritten = true;
	}
	return out;
}

Program tt_initial(const Program& init, const std::set<Atom>& fluents, bool relaxed) {
	Program out;
	for (const auto& r : init.rules()) {
		Rule g = map_atoms(r, [&](const Atom& a) { return fluents.contains(a) ? holds_at(a, 0) : a; });
		if (relaxed && g.type == HeadType::Constraint) {
			g.type = HeadType::Normal;
			g.head = {{Literal::pos(alpha_at(0)), {}}};
		}
		out.add(std::move(g));
	}
	return out;
}

Program tt_dynamic(const PlanningDescription& dd, int n, bool relaxed) {
	const auto& sig = dd.sig;
	auto actions = sig.actions();
	std::map<Atom, Atom> previous;
	for (const auto& f : sig.fluents) { previous.emplace(prev(f), f); }
	Program out;
	for (int t = 1; t <= n; ++t) {
		for (const auto& r : dd.dynamic.rules()) {
			Rule g = map_atoms(r, [&](const Atom& a) {
				if (sig.fluents.contains(a)) { return holds_at(a, t); }
				if (auto it = previous.find(a); it != previous.end()) { return holds_at(it->second, t - 1); }
				if (actions.contains(a)) { return occurs_at(a, t); }
				return a;
			});
			g.body.push_back(Literal::pos(time_atom(t)));
			if (relaxed) { g.body.push_back(Literal::neg(alpha_at(t))); }
			g.canonicalize();
			out.add(std::move(g));
		}
	}
	return out;
}

Program tt_goal(const PlanningDescription& dd, int n, bool relaxed) {
	Program out;
	for (const auto& r : dd.goal.rules()) {
		Rule g = map_atoms(r, [&](const Atom& a) { return dd.sig.fluents.contains(a) ? holds_at(a, n) : a; });
		if (relaxed) {
			g.body.push_back(Literal::neg(alpha_at(n)));
			g.canonicalize();
		}
		out.add(std::move(g));
	}
	return out;
}

std::set<Atom> choice_heads(const Program& p) {
	std::set<Atom> out;
	for (const auto& r : p.rules()) {
		if (r.type == HeadType::Choice) {
			for (const auto& e : r.head) { out.insert(e.literal.atom); }
		}
	}
	return out;
}

/// Grounds schematic rules together with the domain facts. Atoms defined by
/// the hand-built parts are passed as seeds.
Program ground_schematic(const Program& domain, const std::string& rules, int n, const std::set<Atom>& seeds) {
	GroundOptions opts;
	opts.seeds = seeds;
	return ground_text(to_string(domain) + "#const n = " + std::to_string(n) + ".\n" + rules, opts);
}

/// Plans of sequential modes use the normal actions only.
DomainSignature sequential(const DomainSignature& sig) {
	DomainSignature out = sig;
	out.sensing_actions.clear();
	out.senses.clear();
	return out;
}

struct Builder {
	const PlanningDescription& dd;
	int n;
	Mode mode;
	EncodedProblem ep;
	std::string schematic;
	std::set<Atom> seeds;
	Program parts;

	Builder(const PlanningDescription& d, int horizon, Mode m) : dd(d), n(horizon), mode(m) {
		check_horizon(n);
		dd.sig.validate();
		ep.mode = m;
		ep.horizon = n;
		for (const auto& f : dd.sig.fluents) {
			for (int t = 0; t <= n; ++t) { seeds.insert(holds_at(f, t)); }
		}
		for (int t = 0; t <= n; ++t) { seeds.insert(alpha_at(t)); }
	}

	void occurrences(const DomainSignature& sig) {
		sig_ = sig;
		ep.vocab.occ_at.assign(n, {});
		for (int t = 1; t <= n; ++t) {
			for (const auto& a : sig.actions()) {
				ep.vocab.occ_at[t - 1].insert(occurs_at(a, t));
				ep.vocab.occ.insert(occurs_at(a, t));
			}
		}
		const char* op = mode == Mode::Conditional ? "<=" : "=";
		schematic += std::string("{ occ(A,T) : action(A) } ") + op + " 1 :- t(T).\n";
	}

	void relaxed() {
		auto init = gdt_initial(dd);
		if (init.rewritten) { ep.notices.emplace_back("the initial rules were rewritten into GDT form"); }
		Program tinit = tt_initial(init.program, dd.sig.fluents, true);
		ep.vocab.open = choice_heads(tinit);
		parts.add(tinit);
		parts.add(tt_dynamic(dd, n, true));
		parts.add(tt_goal(dd, n, true));
		for (int t = 0; t <= n; ++t) { ep.vocab.alpha.insert(alpha_at(t)); }
		schematic += "alpha(T) :- t(T), alpha(T-1).\n";
	}

	EncodedProblem finish(const Prefix& prefix) {
		Program domain = build_domain_facts(sig_, n);
		ep.qlp.program = ground_schematic(domain, schematic, n, seeds) + parts;
		for (const auto& b : prefix) {
			if (!b.atoms.empty()) { ep.qlp.prefix.push_back(b); }
		}
		ep.qlp.prefix = merge_adjacent(ep.qlp.prefix);
		validate(ep.qlp);
		return std::move(ep);
	}

private:
	DomainSignature sig_;
};

} // namespace

Program build_domain_facts(const DomainSignature& sig, int n) {
	check_horizon(n);
	Program out;
	for (int t = 1; t <= n; ++t) { out.add(Rule::fact(time_atom(t))); }
	for (const auto& a : sig.actions()) { out.add(Rule::fact(make_atom("action", {a}))); }
	for (const auto& [a, f] : sig.senses) { out.add(Rule::fact(make_atom("senses", {a, f}))); }
	return out;
}

Program tt(const PlanningDescription& dd, int n) {
	check_horizon(n);
	return tt_initial(dd.initial, dd.sig.fluents, false) + tt_dynamic(dd, n, false) + tt_goal(dd, n, false);
}

Program ttt(const PlanningDescription& dd, int n) {
	check_horizon(n);
	return tt_initial(gdt_initial(dd).program, dd.sig.fluents, true) + tt_dynamic(dd, n, true) + tt_goal(dd, n, true);
}

std::set<Atom> open_atoms(const PlanningDescription& dd) {
	return choice_heads(tt_initial(gdt_initial(dd).program, dd.sig.fluents, true));
}

EncodedProblem encode_classical(const PlanningDescription& dd, int n) {
	if (initial_states(dd).size() != 1) { throw InvalidInput("classical planning needs exactly one initial state"); }
	Builder b(dd, n, Mode::Classical);
	b.occurrences(sequential(dd.sig));
	b.parts = tt(dd, n);
	return b.finish({{Quantifier::Exists, b.ep.vocab.occ}});
}

EncodedProblem encode_conformant(const PlanningDescription& dd, int n) {
	Builder b(dd, n, Mode::Conformant);
	b.occurrences(sequential(dd.sig));
	b.relaxed();
	return b.finish({{Quantifier::Exists, b.ep.vocab.occ}, {Quantifier::Forall, b.ep.vocab.open}});
}

EncodedProblem encode_assumption(const PlanningDescription& dd, const std::set<Atom>& assumable, int n) {
	for (const auto& f : assumable) {
		if (!dd.sig.fluents.contains(f)) { throw InvalidInput("assumable " + f.to_string() + " is not a fluent"); }
	}
	Builder b(dd, n, Mode::Assumption);
	b.occurrences(sequential(dd.sig));
	b.relaxed();
	for (const auto& f : assumable) {
		b.schematic += "assumable(" + f.to_string() + ").\n";
		for (const char* v : {"true", "false"}) { b.ep.vocab.assume.insert(make_atom("assume", {f, Symbol::function(v)})); }
	}
	for (const auto& f : dd.sig.fluents) { b.seeds.insert(wrap("init", f)); }
	b.schematic +=
	    "{ assume(F,true); assume(F,false) } <= 1 :- assumable(F).\n"
	    ":- not init(F), assume(F,true).\n"
	    ":- init(F), assume(F,false).\n"
	    "alpha(0) :- not h(F,0), assume(F,true).\n"
	    "alpha(0) :- h(F,0), assume(F,false).\n";
	for (const auto& r : dd.initial.rules()) {
		b.parts.add(map_atoms(r, [&](const Atom& a) { return dd.sig.fluents.contains(a) ? wrap("init", a) : a; }));
	}
	std::set<Atom> outer = b.ep.vocab.occ;
	outer.insert(b.ep.vocab.assume.begin(), b.ep.vocab.assume.end());
	return b.finish({{Quantifier::Exists, outer}, {Quantifier::Forall, b.ep.vocab.open}});
}

EncodedProblem encode_conditional(const PlanningDescription& dd, int n) {
	Builder b(dd, n, Mode::Conditional);
	b.occurrences(dd.sig);
	b.relaxed();
	b.schematic +=
	    "{ obs(true,T) } :- t(T), T < n.\n"
	    "alpha(T) :- t(T), occ(A,T-1), senses(A,F), { h(F,T-1); obs(true,T-1) } = 1.\n"
	    "alpha(T) :- t(T), occ(A,T), { senses(A,F) } = 0, obs(true,T).\n";
	Prefix prefix;
	b.ep.vocab.obs_at.assign(n - 1, {});
	for (int t = 1; t <= n; ++t) {
		prefix.push_back({Quantifier::Exists, b.ep.vocab.occ_at[t - 1]});
		if (t < n) {
			b.ep.vocab.obs_at[t - 1] = {obs_at(t)};
			prefix.push_back({Quantifier::Forall, b.ep.vocab.obs_at[t - 1]});
		}
	}
	prefix.push_back({Quantifier::Forall, b.ep.vocab.open});
	return b.finish(prefix);
}

EncodedProblem encode(const PlanningDescription& dd, Mode mode, int n) {
	switch (mode) {
	case Mode::Classical: return encode_classical(dd, n);
	case Mode::Conformant: return encode_conformant(dd, n);
	case Mode::Assumption: return encode_assumption(dd, dd.sig.assumables, n);
	case Mode::Conditional: return encode_conditional(dd, n);
	}
	throw InvalidInput("unknown planning mode");
}

namespace {

std::optional<Atom> action_at(const EncodedProblem& ep, const Interpretation& witness, int t) {
	std::optional<Atom> out;
	for (const auto& a : ep.vocab.occ_at[t - 1]) {
		if (!witness.contains(a)) { continue; }
		if (out) { throw Error("malformed witness: two actions at step " + std::to_string(t)); }
		out = a.args()[0];
	}
	return out;
}

class Unfolder {
public:
	Unfolder(const EncodedProblem& ep, const Backend& backend) : ep_(ep), backend_(backend) {}

	Plan step(int t, const Interpretation& witness) {
		auto a = action_at(ep_, witness, t);
		std::set<Atom> chosen;
		if (a) { chosen.insert(occurs_at(*a, t)); }
		std::size_t mark = fixed_.size();
		for (auto& r : fixcons(chosen, ep_.vocab.occ_at[t - 1])) { fixed_.push_back(std::move(r)); }
		Plan out;
		bool sensing = a && is_sensing(*a);
		if (t == ep_.horizon) {
			if (a) { out = sensing ? Plan::branch(*a, Plan(), Plan()) : Plan::seq(*a); }
		} else if (sensing) {
			Plan yes = observe(t, true);
			Plan no = observe(t, false);
			out = Plan::branch(*a, std::move(yes), std::move(no));
		} else {
			// the observation after a normal action or an empty step carries no information
			Plan rest = observe(t, false);
			out = a ? Plan::seq(*a, std::move(rest)) : std::move(rest);
		}
		fixed_.resize(mark);
		return out;
	}

private:
	bool is_sensing(const Atom& a) const {
		for (const auto& r : ep_.qlp.program.rules()) {
			if (r.is_fact() && r.head_atom().name() == "senses" && r.head_atom().arity() == 2 && r.head_atom().args()[0] == a) {
				return true;
			}
		}
		return false;
	}

	Plan observe(int t, bool value) {
		const auto& scope = ep_.vocab.obs_at[t - 1];
		std::size_t mark = fixed_.size();
		for (auto& r : fixcons(value ? scope : std::set<Atom>{}, scope)) { fixed_.push_back(std::move(r)); }
		QuantifiedProgram sub;
		sub.program = ep_.qlp.program;
		for (const auto& r : fixed_) { sub.program.add(r); }
		for (int u = t + 1; u <= ep_.horizon; ++u) {
			sub.prefix.push_back({Quantifier::Exists, ep_.vocab.occ_at[u - 1]});
			if (u < ep_.horizon) { sub.prefix.push_back({Quantifier::Forall, ep_.vocab.obs_at[u - 1]}); }
		}
		if (!ep_.vocab.open.empty()) { sub.prefix.push_back({Quantifier::Forall, ep_.vocab.open}); }
		auto r = decide(sub, backend_);
		if (!r.satisfiable || !r.witness) { throw Error("conditional plan extraction failed at step " + std::to_string(t + 1)); }
		Plan out = step(t + 1, *r.witness);
		fixed_.resize(mark);
		return out;
	}

	const EncodedProblem& ep_;
	const Backend& backend_;
	std::vector<Rule> fixed_;
};

} // namespace

DecodedSolution decode(const EncodedProblem& ep, const Interpretation& witness, const Backend& backend) {
	DecodedSolution out;
	out.mode = ep.mode;
	if (ep.mode == Mode::Conditional) {
		out.plan = Unfolder(ep, backend).step(1, witness);
		return out;
	}
	std::vector<Atom> actions;
	for (int t = 1; t <= ep.horizon; ++t) {
		auto a = action_at(ep, witness, t);
		if (!a) { throw Error("malformed witness: no action at step " + std::to_string(t)); }
		actions.push_back(*a);
	}
	out.plan = Plan::sequence(actions);
	for (const auto& a : ep.vocab.assume) {
		if (!witness.contains(a)) { continue; }
		(a.args()[1].name() == "true" ? out.true_set : out.false_set).insert(a.args()[0]);
	}
	return out;
}

std::optional<IncrementalResult> solve_incremental(const PlanningDescription& dd, Mode mode, int n_max,
                                                   const Backend& backend) {
	check_horizon(n_max);
	for (int n = 1; n <= n_max; ++n) {
		auto ep = encode(dd, mode, n);
		auto r = decide(ep.qlp, backend);
		if (!r.satisfiable) { continue; }
		if (!r.witness) { throw SolverError("the solver reported no assignment for the outermost block"); }
		return IncrementalResult{decode(ep, *r.witness, backend), n};
	}
	return std::nullopt;
}

} // namespace qasp
