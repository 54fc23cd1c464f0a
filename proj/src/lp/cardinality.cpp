#include <qasp/analysis.hpp>
#include <qasp/error.hpp>

#include <map>

namespace qasp {

namespace {

// A conjunction of literals.
struct Conj {
	std::vector<Literal> lits;
};
using Dnf = std::vector<Conj>;

CmpOp negate(CmpOp op) {
	switch (op) {
		case CmpOp::Eq: return CmpOp::Ne;
		case CmpOp::Ne: return CmpOp::Eq;
		case CmpOp::Lt: return CmpOp::Ge;
		case CmpOp::Le: return CmpOp::Gt;
		case CmpOp::Gt: return CmpOp::Le;
		case CmpOp::Ge: return CmpOp::Lt;
	}
	return op;
}

class Compiler {
public:
	explicit Compiler(const Program& p) : src_(p) {
		for (const auto& a : p.universe()) {
			if (a.name() == "_cnt" && a.arity() == 3 && a.args()[0].is_number()) {
				next_id_ = std::max(next_id_, a.args()[0].value() + 1);
			}
		}
	}

	Program run() {
		for (const auto& a : src_.universe()) { out_.declare(a); }
		for (const auto& r : src_.rules()) {
			if (r.is_basic()) { out_.add(r); }
			else { compile(r); }
		}
		return std::move(out_);
	}

private:
	/// Counter atoms _cnt(id,i,j) for i <= size, j <= width.
	struct Counter {
		std::int64_t id = 0;
		std::size_t size = 0;
		std::int64_t width = 0;
	};

	Atom cnt(std::int64_t id, std::size_t i, std::int64_t j) const {
		return make_atom("_cnt", {Symbol::number(id), Symbol::number(static_cast<std::int64_t>(i)), Symbol::number(j)});
	}

	Counter counter(const std::vector<Element>& elems, std::int64_t width) {
		std::int64_t m = static_cast<std::int64_t>(elems.size());
		width = std::min(width, m);
		auto key = std::make_pair(elems, width);
		if (auto it = memo_.find(key); it != memo_.end()) { return it->second; }
		Counter c{next_id_++, elems.size(), width};
		for (std::size_t i = 1; i <= elems.size(); ++i) {
			std::vector<Literal> cond = elems[i - 1].condition;
			cond.push_back(elems[i - 1].literal);
			std::int64_t top = std::min<std::int64_t>(static_cast<std::int64_t>(i), width);
			for (std::int64_t j = 1; j <= top; ++j) {
				if (i > 1 && j <= static_cast<std::int64_t>(i) - 1) { out_.add(Rule::normal(cnt(c.id, i, j), {Literal::pos(cnt(c.id, i - 1, j))})); }
				if (j == 1) { out_.add(Rule::normal(cnt(c.id, i, 1), cond)); }
				else {
					auto body = cond;
					body.push_back(Literal::pos(cnt(c.id, i - 1, j - 1)));
					out_.add(Rule::normal(cnt(c.id, i, j), body));
				}
			}
		}
		memo_.emplace(key, c);
		return c;
	}

	/// DNF over counter literals equivalent to `count(elems) op k`.
	Dnf condition(const std::vector<Element>& elems, Bound b) {
		std::int64_t m = static_cast<std::int64_t>(elems.size());
		std::int64_t k = b.value;
		// at least j, as a DNF of one conjunction or empty (false)
		std::int64_t width = 0;
		auto need = [&](std::int64_t j) {
			if (j >= 1 && j <= m) { width = std::max(width, j); }
		};
		switch (b.op) {
			case CmpOp::Ge: need(k); break;
			case CmpOp::Gt: need(k + 1); break;
			case CmpOp::Le: need(k + 1); break;
			case CmpOp::Lt: need(k); break;
			case CmpOp::Eq:
			case CmpOp::Ne: need(k); need(k + 1); break;
		}
		Counter c{};
		if (width > 0) { c = counter(elems, width); }
		// literal for "at least j": true/false constants or a counter atom
		enum class Kind { True, False, Lit };
		auto atleast = [&](std::int64_t j, bool positive) -> std::pair<Kind, Literal> {
			if (j <= 0) { return {positive ? Kind::True : Kind::False, {}}; }
			if (j > m) { return {positive ? Kind::False : Kind::True, {}}; }
			return {Kind::Lit, {cnt(c.id, c.size, j), !positive}};
		};
		auto conj = [&](std::vector<std::pair<Kind, Literal>> parts) -> std::optional<Conj> {
			Conj out;
			for (auto& [kind, lit] : parts) {
				if (kind == Kind::False) { return std::nullopt; }
				if (kind == Kind::Lit) { out.lits.push_back(lit); }
			}
			return out;
		};
		Dnf d;
		auto push = [&](std::optional<Conj> c) {
			if (c) { d.push_back(std::move(*c)); }
		};
		switch (b.op) {
			case CmpOp::Ge: push(conj({atleast(k, true)})); break;
			case CmpOp::Gt: push(conj({atleast(k + 1, true)})); break;
			case CmpOp::Le: push(conj({atleast(k + 1, false)})); break;
			case CmpOp::Lt: push(conj({atleast(k, false)})); break;
			case CmpOp::Eq: push(conj({atleast(k, true), atleast(k + 1, false)})); break;
			case CmpOp::Ne:
				push(conj({atleast(k, false)}));
				push(conj({atleast(k + 1, true)}));
				break;
		}
		return d;
	}

	void compile(const Rule& r) {
		// alternative plain bodies, one per combination of aggregate disjuncts
		std::vector<std::vector<Literal>> bodies{r.body};
		for (const auto& agg : r.aggregates) {
			Dnf d = condition(agg.elements, agg.bound);
			std::vector<std::vector<Literal>> next;
			for (const auto& b : bodies) {
				for (const auto& c : d) {
					auto nb = b;
					nb.insert(nb.end(), c.lits.begin(), c.lits.end());
					next.push_back(std::move(nb));
				}
			}
			bodies = std::move(next);
		}
		for (const auto& body : bodies) {
			switch (r.type) {
				case HeadType::Normal: out_.add(Rule::normal(r.head_atom(), body)); break;
				case HeadType::Constraint: out_.add(Rule::constraint(body)); break;
				case HeadType::Choice: {
					for (const auto& e : r.head) {
						if (e.literal.negated) { throw InvalidInput("negative choice element in " + to_string(r)); }
						auto b = body;
						b.insert(b.end(), e.condition.begin(), e.condition.end());
						out_.add(Rule::choice(e.literal.atom, b));
					}
					if (r.head_bound) {
						Dnf violated = condition(r.head, {negate(r.head_bound->op), r.head_bound->value});
						for (const auto& c : violated) {
							auto b = body;
							b.insert(b.end(), c.lits.begin(), c.lits.end());
							out_.add(Rule::constraint(b));
						}
					}
					break;
				}
			}
		}
	}

	const Program& src_;
	Program out_;
	std::int64_t next_id_ = 1;
	std::map<std::pair<std::vector<Element>, std::int64_t>, Counter> memo_;
};

} // namespace

Program compile_cardinality(const Program& p) { return Compiler(p).run(); }

} // namespace qasp
