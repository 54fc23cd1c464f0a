#include <qasp/error.hpp>
#include <qasp/program.hpp>

#include <algorithm>

namespace qasp {

const char* to_string(CmpOp op) {
	switch (op) {
		case CmpOp::Eq: return "=";
		case CmpOp::Ne: return "!=";
		case CmpOp::Lt: return "<";
		case CmpOp::Le: return "<=";
		case CmpOp::Gt: return ">";
		case CmpOp::Ge: return ">=";
	}
	return "?";
}

bool compare(std::int64_t lhs, CmpOp op, std::int64_t rhs) {
	switch (op) {
		case CmpOp::Eq: return lhs == rhs;
		case CmpOp::Ne: return lhs != rhs;
		case CmpOp::Lt: return lhs < rhs;
		case CmpOp::Le: return lhs <= rhs;
		case CmpOp::Gt: return lhs > rhs;
		case CmpOp::Ge: return lhs >= rhs;
	}
	return false;
}

namespace {
template <class T>
void sort_unique(std::vector<T>& v) {
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}
} // namespace

Rule Rule::normal(Atom h, std::vector<Literal> body) {
	Rule r;
	r.type = HeadType::Normal;
	r.head.push_back({Literal::pos(std::move(h)), {}});
	r.body = std::move(body);
	r.canonicalize();
	return r;
}

Rule Rule::choice(Atom h, std::vector<Literal> body) {
	Rule r = normal(std::move(h), std::move(body));
	r.type = HeadType::Choice;
	return r;
}

Rule Rule::constraint(std::vector<Literal> body) {
	Rule r;
	r.body = std::move(body);
	r.canonicalize();
	return r;
}

bool Rule::is_basic() const {
	if (!aggregates.empty() || head_bound) { return false; }
	switch (type) {
		case HeadType::Constraint: return head.empty();
		case HeadType::Normal:
		case HeadType::Choice:
			return head.size() == 1 && head[0].condition.empty() && !head[0].literal.negated;
	}
	return false;
}

const Atom& Rule::head_atom() const {
	if (type == HeadType::Constraint || head.size() != 1) { throw InvalidInput("rule has no single head atom: " + to_string(*this)); }
	return head[0].literal.atom;
}

std::vector<Atom> Rule::pos_body() const {
	std::vector<Atom> out;
	for (const auto& l : body) {
		if (!l.negated) { out.push_back(l.atom); }
	}
	return out;
}

std::vector<Atom> Rule::neg_body() const {
	std::vector<Atom> out;
	for (const auto& l : body) {
		if (l.negated) { out.push_back(l.atom); }
	}
	return out;
}

void Rule::canonicalize() {
	sort_unique(body);
	for (auto& e : head) { sort_unique(e.condition); }
	if (type == HeadType::Choice) { sort_unique(head); }
	for (auto& agg : aggregates) {
		for (auto& e : agg.elements) { sort_unique(e.condition); }
		sort_unique(agg.elements);
	}
	sort_unique(aggregates);
}

void collect_atoms(const Rule& r, std::set<Atom>& out) {
	auto elems = [&](const std::vector<Element>& es) {
		for (const auto& e : es) {
			out.insert(e.literal.atom);
			for (const auto& c : e.condition) { out.insert(c.atom); }
		}
	};
	elems(r.head);
	for (const auto& l : r.body) { out.insert(l.atom); }
	for (const auto& a : r.aggregates) { elems(a.elements); }
}

Program::Program(std::vector<Rule> rules) {
	for (auto& r : rules) { add(std::move(r)); }
}

void Program::add(Rule r) {
	r.canonicalize();
	if (!index_.insert(r).second) { return; }
	collect_atoms(r, universe_);
	rules_.push_back(std::move(r));
}

void Program::add(const Program& other) {
	for (const auto& r : other.rules_) { add(r); }
	universe_.insert(other.universe_.begin(), other.universe_.end());
}

bool Program::is_basic() const {
	return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.is_basic(); });
}

std::set<Atom> Program::atoms() const {
	std::set<Atom> out;
	for (const auto& r : rules_) { collect_atoms(r, out); }
	return out;
}

bool operator==(const Program& a, const Program& b) { return a.index_ == b.index_ && a.universe_ == b.universe_; }

Program operator+(Program lhs, const Program& rhs) {
	lhs.add(rhs);
	return lhs;
}

bool holds(const Literal& l, const Interpretation& x) { return x.contains(l.atom) != l.negated; }

bool holds_all(const std::vector<Literal>& ls, const Interpretation& x) {
	return std::all_of(ls.begin(), ls.end(), [&](const Literal& l) { return holds(l, x); });
}

std::int64_t count(const Aggregate& agg, const Interpretation& x) {
	std::int64_t n = 0;
	for (const auto& e : agg.elements) {
		if (holds(e.literal, x) && holds_all(e.condition, x)) { ++n; }
	}
	return n;
}

bool holds(const Aggregate& agg, const Interpretation& x) { return agg.bound.holds(count(agg, x)); }

bool body_holds(const Rule& r, const Interpretation& x) {
	return holds_all(r.body, x) &&
	       std::all_of(r.aggregates.begin(), r.aggregates.end(), [&](const Aggregate& a) { return holds(a, x); });
}

std::string to_string(const Literal& l) { return l.negated ? "not " + l.atom.to_string() : l.atom.to_string(); }

namespace {
void print_literals(std::string& out, const std::vector<Literal>& ls, const char* sep) {
	bool first = true;
	for (const auto& l : ls) {
		if (!first) { out += sep; }
		first = false;
		out += to_string(l);
	}
}

void print_elements(std::string& out, const std::vector<Element>& es) {
	out += '{';
	bool first = true;
	for (const auto& e : es) {
		out += first ? " " : "; ";
		first = false;
		out += to_string(e.literal);
		if (!e.condition.empty()) {
			out += " : ";
			print_literals(out, e.condition, ", ");
		}
	}
	out += es.empty() ? "}" : " }";
}

void print_bound(std::string& out, const Bound& b) {
	out += ' ';
	out += to_string(b.op);
	out += ' ';
	out += std::to_string(b.value);
}
} // namespace

std::string to_string(const Rule& r) {
	std::string out;
	if (r.type == HeadType::Normal) {
		out += r.head_atom().to_string();
	}
	else if (r.type == HeadType::Choice) {
		if (r.is_basic()) { out += "{" + r.head_atom().to_string() + "}"; }
		else {
			print_elements(out, r.head);
			if (r.head_bound) { print_bound(out, *r.head_bound); }
		}
	}
	bool has_body = !r.body.empty() || !r.aggregates.empty();
	if (has_body || r.type == HeadType::Constraint) {
		out += r.type == HeadType::Constraint ? ":-" : " :-";
		if (has_body) { out += ' '; }
		print_literals(out, r.body, ", ");
		bool first = r.body.empty();
		for (const auto& a : r.aggregates) {
			if (!first) { out += ", "; }
			first = false;
			print_elements(out, a.elements);
			print_bound(out, a.bound);
		}
	}
	out += '.';
	return out;
}

std::string to_string(const Program& p) {
	std::string out;
	for (const auto& r : p.rules()) {
		out += to_string(r);
		out += '\n';
	}
	return out;
}

std::string to_string(const Interpretation& x) {
	std::string out = "{";
	bool first = true;
	for (const auto& a : x) {
		if (!first) { out += ", "; }
		first = false;
		out += a.to_string();
	}
	out += '}';
	return out;
}

} // namespace qasp
