#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/qlp.hpp>
#include <qasp/stable.hpp>

#include <algorithm>
#include <map>

namespace qasp {

const char* to_string(Quantifier q) { return q == Quantifier::Exists ? "exists" : "forall"; }

void validate(const QuantifiedProgram& qp) {
	std::set<Atom> seen;
	for (const auto& b : qp.prefix) {
		if (b.atoms.empty()) { throw InvalidInput("empty quantifier block"); }
		for (const auto& a : b.atoms) {
			if (!seen.insert(a).second) { throw InvalidInput("atom " + a.to_string() + " is quantified twice"); }
			if (!qp.program.universe().contains(a)) { throw InvalidInput("quantified atom " + a.to_string() + " is not in the program"); }
		}
	}
}

Prefix merge_adjacent(const Prefix& prefix) {
	Prefix out;
	for (const auto& b : prefix) {
		if (!out.empty() && out.back().kind == b.kind) { out.back().atoms.insert(b.atoms.begin(), b.atoms.end()); }
		else { out.push_back(b); }
	}
	return out;
}

std::vector<Rule> fixcons(const std::set<Atom>& x, const std::set<Atom>& y) {
	std::vector<Rule> out;
	for (const auto& a : x) {
		if (!y.contains(a)) { throw InvalidInput("fixcons: " + a.to_string() + " is not in the scope"); }
		out.push_back(Rule::constraint({Literal::neg(a)}));
	}
	for (const auto& a : y) {
		if (!x.contains(a)) { out.push_back(Rule::constraint({Literal::pos(a)})); }
	}
	return out;
}

namespace {

class Evaluator {
public:
	Evaluator(const QuantifiedProgram& qp, const EvalOptions& opts) : qp_(qp), opts_(opts), solver_(qp.program) {
		for (const auto& b : qp.prefix) { blocks_.emplace_back(b.atoms.begin(), b.atoms.end()); }
	}

	SatResult run() {
		SatResult r;
		std::vector<Literal> fixed;
		bool want_witness = !blocks_.empty() && qp_.prefix[0].kind == Quantifier::Exists;
		r.satisfiable = block(0, fixed, want_witness ? &witness_ : nullptr);
		if (r.satisfiable && want_witness) { r.witness = witness_; }
		return r;
	}

private:
	bool sat(const std::vector<Literal>& fixed) {
		if (++calls_ > opts_.budget) { throw BudgetExceeded("quantified program evaluation exceeds its budget"); }
		return solver_.satisfiable(fixed);
	}

	bool block(std::size_t i, std::vector<Literal>& fixed, Interpretation* witness) {
		if (i == blocks_.size()) { return sat(fixed); }
		// an inner trailing existential block is answered by one search
		if (i + 1 == blocks_.size() && qp_.prefix[i].kind == Quantifier::Exists && !witness) { return sat(fixed); }
		return assign(i, blocks_[i].size(), fixed, witness);
	}

	// decides atoms k-1, ..., 0 of block i, false before true
	bool assign(std::size_t i, std::size_t k, std::vector<Literal>& fixed, Interpretation* witness) {
		if (k == 0) {
			bool ok = block(i + 1, fixed, nullptr);
			if (ok && witness) {
				witness->clear();
				for (const auto& a : blocks_[i]) {
					if (std::find(fixed.begin(), fixed.end(), Literal::pos(a)) != fixed.end()) { witness->insert(a); }
				}
			}
			return ok;
		}
		// no stable model left: every quantified continuation fails
		if (!sat(fixed)) { return false; }
		bool exists = qp_.prefix[i].kind == Quantifier::Exists;
		for (bool value : {false, true}) {
			fixed.push_back({blocks_[i][k - 1], !value});
			bool ok = assign(i, k - 1, fixed, witness);
			fixed.pop_back();
			if (ok == exists) { return ok; }
		}
		return !exists;
	}

	const QuantifiedProgram& qp_;
	EvalOptions opts_;
	Solver solver_;
	std::vector<std::vector<Atom>> blocks_;
	Interpretation witness_;
	std::uint64_t calls_ = 0;
};

} // namespace

SatResult eval_qlp(const QuantifiedProgram& qp, const EvalOptions& opts) {
	validate(qp);
	return Evaluator(qp, opts).run();
}

QuantifiedProgram parse_qlp(std::string_view text, std::vector<std::string>* warnings) {
	auto g = ground_detailed(syntax::parse(text));
	auto is_prefix = [](const Atom& a) { return a.arity() == 2 && (a.name() == "_exists" || a.name() == "_forall"); };
	QuantifiedProgram qp;
	for (const auto& gr : g.rules) {
		const Rule& r = gr.rule;
		if (r.type == HeadType::Normal && is_prefix(r.head_atom())) {
			if (!g.domain_facts.contains(r.head_atom())) { throw InvalidInput("prefix atom " + r.head_atom().to_string() + " must be a fact"); }
			continue;
		}
		if (r.type == HeadType::Choice) {
			for (const auto& e : r.head) {
				if (is_prefix(e.literal.atom)) { throw InvalidInput("prefix atoms must be facts"); }
			}
		}
		qp.program.add(r);
	}
	std::map<std::int64_t, QuantifierBlock> levels;
	std::map<Atom, std::int64_t> level_of;
	for (const auto& f : g.domain_facts) {
		if (!is_prefix(f)) { continue; }
		if (!f.args()[0].is_number()) { throw InvalidInput("quantifier level must be an integer: " + f.to_string()); }
		std::int64_t level = f.args()[0].value();
		Quantifier q = f.name() == "_exists" ? Quantifier::Exists : Quantifier::Forall;
		const Atom& a = f.args()[1];
		if (!a.is_function()) { throw InvalidInput("quantified term is not an atom: " + f.to_string()); }
		auto [it, fresh] = levels.try_emplace(level, QuantifierBlock{q, {}});
		if (!fresh && it->second.kind != q) {
			throw InvalidInput("level " + std::to_string(level) + " is used with both quantifiers");
		}
		if (auto [lt, ok] = level_of.emplace(a, level); !ok && lt->second != level) {
			throw InvalidInput("atom " + a.to_string() + " is quantified at two levels");
		}
		it->second.atoms.insert(a);
	}
	for (auto& [level, b] : levels) {
		for (const auto& a : b.atoms) {
			if (!qp.program.universe().contains(a)) {
				if (warnings) { warnings->push_back("quantified atom " + a.to_string() + " does not occur in the program"); }
				qp.program.declare(a);
			}
		}
		qp.prefix.push_back(std::move(b));
	}
	return qp;
}

std::string to_text(const QuantifiedProgram& qp) {
	std::string out = to_string(qp.program);
	for (std::size_t i = 0; i != qp.prefix.size(); ++i) {
		const char* q = qp.prefix[i].kind == Quantifier::Exists ? "_exists" : "_forall";
		for (const auto& a : qp.prefix[i].atoms) { out += std::string(q) + "(" + std::to_string(i + 1) + "," + a.to_string() + ").\n"; }
	}
	return out;
}

} // namespace qasp
