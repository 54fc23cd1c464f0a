#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/qbf.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace qasp {

std::string emit_qdimacs(const QbfProblem& q) {
	auto prefix = merge_adjacent(q.prefix);
	int n = q.matrix.num_vars;
	std::vector<char> quantified;
	for (const auto& b : prefix) {
		for (int v : b.vars) { n = std::max(n, v); }
	}
	quantified.assign(static_cast<std::size_t>(n) + 1, 0);
	for (const auto& b : prefix) {
		for (int v : b.vars) { quantified[static_cast<std::size_t>(v)] = 1; }
	}
	std::vector<int> rest;
	for (int v = 1; v <= n; ++v) {
		if (!quantified[static_cast<std::size_t>(v)]) { rest.push_back(v); }
	}
	if (!rest.empty()) {
		if (!prefix.empty() && prefix.back().kind == Quantifier::Exists) {
			prefix.back().vars.insert(prefix.back().vars.end(), rest.begin(), rest.end());
			std::sort(prefix.back().vars.begin(), prefix.back().vars.end());
		}
		else { prefix.push_back({Quantifier::Exists, rest}); }
	}
	std::ostringstream out;
	for (const auto& [v, a] : q.map.atom) { out << "c " << v << ' ' << a << '\n'; }
	out << "p cnf " << n << ' ' << q.matrix.clauses.size() << '\n';
	for (const auto& b : prefix) {
		out << (b.kind == Quantifier::Exists ? 'e' : 'a');
		for (int v : b.vars) { out << ' ' << v; }
		out << " 0\n";
	}
	for (const auto& c : q.matrix.clauses) {
		for (int l : c) { out << l << ' '; }
		out << "0\n";
	}
	return out.str();
}

namespace {

Atom parse_atom(const std::string& text) {
	auto p = ground_text(text + ".");
	if (p.size() != 1 || !p.rules()[0].is_fact()) { throw SyntaxError("not an atom: " + text, 0, 0); }
	return p.rules()[0].head_atom();
}

} // namespace

QbfProblem parse_qdimacs(std::string_view text) {
	QbfProblem q;
	std::istringstream in{std::string(text)};
	std::string line;
	int line_no = 0;
	bool header = false;
	int declared_clauses = 0;
	Clause current;
	auto fail = [&](const std::string& msg) { throw SyntaxError(msg, line_no, 1); };
	auto number = [&](const std::string& tok) {
		char* end = nullptr;
		long v = std::strtol(tok.c_str(), &end, 10);
		if (tok.empty() || *end != '\0') { fail("expected an integer, got '" + tok + "'"); }
		return static_cast<int>(v);
	};
	while (std::getline(in, line)) {
		++line_no;
		std::istringstream ls(line);
		std::string tok;
		if (!(ls >> tok)) { continue; }
		if (tok == "c") {
			std::string var, atom;
			if (header || !(ls >> var) || var.find_first_not_of("0123456789") != std::string::npos) { continue; }
			std::getline(ls >> std::ws, atom);
			if (atom.empty()) { continue; }
			q.map.add(parse_atom(atom), number(var));
			continue;
		}
		if (tok == "p") {
			std::string fmt, nv, nc;
			if (header || !(ls >> fmt >> nv >> nc) || fmt != "cnf") { fail("bad problem line"); }
			q.matrix.num_vars = number(nv);
			declared_clauses = number(nc);
			header = true;
			continue;
		}
		if (!header) { fail("missing problem line"); }
		if (tok == "e" || tok == "a") {
			if (!q.matrix.clauses.empty() || !current.empty()) { fail("quantifier line after clauses"); }
			QbfBlock b{tok == "e" ? Quantifier::Exists : Quantifier::Forall, {}};
			bool closed = false;
			while (ls >> tok) {
				int v = number(tok);
				if (v == 0) {
					closed = true;
					break;
				}
				if (v < 0 || v > q.matrix.num_vars) { fail("variable out of range"); }
				b.vars.push_back(v);
			}
			if (!closed) { fail("unterminated quantifier line"); }
			q.prefix.push_back(std::move(b));
			continue;
		}
		do {
			int l = number(tok);
			if (l == 0) {
				q.matrix.add(current);
				current.clear();
				continue;
			}
			if (std::abs(l) > q.matrix.num_vars) { fail("literal out of range"); }
			current.push_back(l);
		} while (ls >> tok);
	}
	if (!current.empty()) { fail("unterminated clause"); }
	if (!header) { throw SyntaxError("missing problem line", line_no, 1); }
	(void)declared_clauses;
	q.prefix = merge_adjacent(q.prefix);
	return q;
}

std::string qdimacs_answer(const QbfProblem& q, const SatResult& r) {
	std::string out = r.satisfiable ? "s cnf 1\n" : "s cnf 0\n";
	if (r.witness && !q.prefix.empty()) {
		for (int v : q.prefix[0].vars) {
			auto it = q.map.atom.find(v);
			if (it == q.map.atom.end()) { continue; }
			out += "V " + std::to_string(r.witness->contains(it->second) ? v : -v) + " 0\n";
		}
	}
	return out;
}

} // namespace qasp
