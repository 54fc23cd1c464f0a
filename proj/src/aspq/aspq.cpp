#include <qasp/analysis.hpp>
#include <qasp/aspq.hpp>
#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/parser.hpp>
#include <qasp/stable.hpp>

#include <sstream>

namespace qasp {

void AspqProgram::validate() const {
	if (blocks.empty()) { throw InvalidInput("an ASP(Q) program needs at least one quantified block"); }
	for (const auto& r : check.rules()) {
		if (r.type == HeadType::Choice) { throw InvalidInput("the check program may not contain choice rules: " + to_string(r)); }
	}
	if (!is_stratified(compile_cardinality(check))) { throw InvalidInput("the check program is not stratified"); }
}

std::vector<Rule> fixfact(const std::set<Atom>& x, const std::set<Atom>& y) {
	std::vector<Rule> out;
	for (const auto& a : x) {
		if (!y.contains(a)) { throw InvalidInput("fixfact: " + a.to_string() + " is not in the scope"); }
		out.push_back(Rule::fact(a));
	}
	for (const auto& a : y) {
		if (!x.contains(a)) { out.push_back(Rule::constraint({Literal::pos(a)})); }
	}
	return out;
}

namespace {

class Coherence {
public:
	Coherence(const AspqProgram& pi, const CoherenceOptions& opts) : pi_(pi), opts_(opts) {}

	bool block(std::size_t i, const std::vector<Rule>& fixed) {
		Program p = pi_.blocks[i].program;
		for (const auto& r : fixed) { p.add(r); }
		bool exists = pi_.blocks[i].kind == Quantifier::Exists;
		Solver solver(p);
		auto models = solver.enumerate();
		models_ += models.size();
		if (models_ > opts_.budget) { throw BudgetExceeded("coherence check enumerates too many stable models"); }
		for (const auto& m : models) {
			auto next = fixfact(m, p.universe());
			bool ok = i + 1 == pi_.blocks.size() ? checked(next) : block(i + 1, next);
			if (ok == exists) { return ok; }
		}
		return !exists;
	}

private:
	bool checked(const std::vector<Rule>& fixed) {
		Program c = pi_.check;
		for (const auto& r : fixed) { c.add(r); }
		return Solver(c).satisfiable();
	}

	const AspqProgram& pi_;
	CoherenceOptions opts_;
	std::uint64_t models_ = 0;
};

std::set<Atom> head_atoms(const Program& p) {
	std::set<Atom> out;
	for (const auto& r : p.rules()) {
		for (const auto& e : r.head) { out.insert(e.literal.atom); }
	}
	return out;
}

} // namespace

bool coherent(const AspqProgram& pi, const CoherenceOptions& opts) {
	pi.validate();
	return Coherence(pi, opts).block(0, {});
}

bool is_normal_form(const AspqProgram& pi) {
	if (!pi.check.empty()) { return false; }
	std::set<Atom> previous;
	for (const auto& b : pi.blocks) {
		for (const auto& h : head_atoms(b.program)) {
			if (previous.contains(h)) { return false; }
		}
		previous.insert(b.program.universe().begin(), b.program.universe().end());
	}
	return true;
}

AspqProgram normalize(const AspqProgram& pi) {
	pi.validate();
	std::vector<AspqBlock> blocks = pi.blocks;
	if (!pi.check.empty()) { blocks.push_back({Quantifier::Exists, pi.check}); }
	AspqProgram out;
	std::set<Atom> previous;
	for (const auto& b : blocks) {
		// earlier atoms are declared so that counter atoms stay fresh
		Program wide = b.program;
		for (const auto& a : previous) { wide.declare(a); }
		Program compiled = compile_cardinality(wide);
		Program p;
		for (const auto& a : b.program.universe()) { p.declare(a); }
		for (const auto& r : compiled.rules()) {
			if (r.type == HeadType::Constraint || !previous.contains(r.head_atom())) {
				p.add(r);
			} else if (r.type == HeadType::Normal) {
				auto body = r.body;
				body.push_back(Literal::neg(r.head_atom()));
				p.add(Rule::constraint(body));
			}
		}
		out.blocks.push_back({b.kind, std::move(p)});
		previous.insert(out.blocks.back().program.universe().begin(), out.blocks.back().program.universe().end());
	}
	for (auto& b : out.blocks) {
		if (b.kind != Quantifier::Forall || is_gdt(b.program)) { continue; }
		auto g = to_gdt(b.program);
		for (const auto& a : g.aux) {
			if (previous.contains(a)) { throw InvalidInput("auxiliary atom " + a.to_string() + " is already in use"); }
		}
		previous.insert(g.aux.begin(), g.aux.end());
		b.program = std::move(g.program);
	}
	return out;
}

QuantifiedProgram to_qlp(const AspqProgram& pi) {
	pi.validate();
	if (!is_normal_form(pi)) { throw InvalidInput("to_qlp needs an ASP(Q) program in normal form"); }
	std::set<Atom> all;
	for (const auto& b : pi.blocks) {
		if (!b.program.is_basic()) { throw InvalidInput("to_qlp needs basic programs"); }
		if (b.kind == Quantifier::Forall && !is_gdt(b.program)) { throw InvalidInput("universal blocks must be in GDT form"); }
		all.insert(b.program.universe().begin(), b.program.universe().end());
	}
	std::string name = "_alpha";
	auto taken = [&] {
		for (const auto& a : all) {
			if (a.name() == name && a.arity() == 1) { return true; }
		}
		return false;
	};
	while (taken()) { name = "_" + name; }
	auto alpha = [&](std::size_t i) { return make_atom(name, {Symbol::number(static_cast<std::int64_t>(i))}); };

	std::size_t n = pi.blocks.size() - 1;
	QuantifiedProgram out;
	std::set<Atom> previous;
	for (std::size_t i = 0; i <= n; ++i) {
		const auto& b = pi.blocks[i];
		QuantifierBlock q{b.kind, {}};
		for (const auto& a : b.program.universe()) { out.program.declare(a); }
		if (b.kind == Quantifier::Exists) {
			for (const auto& a : b.program.universe()) {
				if (!previous.contains(a)) { q.atoms.insert(a); }
			}
			for (auto r : b.program.rules()) {
				if (n > 0) {
					r.body.push_back(Literal::neg(alpha(i)));
					r.canonicalize();
				}
				out.program.add(std::move(r));
			}
		} else {
			for (auto r : b.program.rules()) {
				if (r.type == HeadType::Choice) { q.atoms.insert(r.head_atom()); }
				if (r.type == HeadType::Constraint) {
					r.type = HeadType::Normal;
					r.head = {{Literal::pos(alpha(i)), {}}};
				}
				out.program.add(std::move(r));
			}
		}
		if (!q.atoms.empty()) { out.prefix.push_back(std::move(q)); }
		previous.insert(b.program.universe().begin(), b.program.universe().end());
	}
	std::size_t beta = pi.blocks[0].kind == Quantifier::Forall ? 1 : 2;
	for (std::size_t i = beta; i <= n; ++i) { out.program.add(Rule::normal(alpha(i), {Literal::pos(alpha(i - 1))})); }
	out.prefix = merge_adjacent(out.prefix);
	return out;
}

Atom primed(const Atom& a) {
	if (!a.is_function()) { throw InvalidInput("cannot prime " + a.to_string()); }
	return make_atom(a.name() + "'", {a.args().begin(), a.args().end()});
}

AspqProgram from_qlp(const QuantifiedProgram& qp) {
	validate(qp);
	std::set<Atom> quantified;
	for (const auto& b : qp.prefix) { quantified.insert(b.atoms.begin(), b.atoms.end()); }
	for (const auto& p : quantified) {
		if (qp.program.universe().contains(primed(p))) {
			throw InvalidInput("primed atom " + primed(p).to_string() + " already occurs in the program");
		}
	}
	AspqProgram out;
	for (const auto& b : qp.prefix) {
		Program guess;
		for (const auto& p : b.atoms) { guess.add(Rule::choice(primed(p))); }
		out.blocks.push_back({b.kind, std::move(guess)});
	}
	Program last = qp.program;
	for (const auto& p : quantified) {
		last.add(Rule::constraint({Literal::pos(p), Literal::neg(primed(p))}));
		last.add(Rule::constraint({Literal::neg(p), Literal::pos(primed(p))}));
	}
	out.blocks.push_back({Quantifier::Exists, std::move(last)});
	return out;
}

AspqProgram parse_aspq(std::string_view text) {
	struct Section {
		std::string marker;
		std::string body;
		int line = 0;
	};
	std::vector<Section> sections{{"", "", 0}};
	std::istringstream in{std::string(text)};
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		auto start = line.find_first_not_of(" \t\r");
		if (start != std::string::npos && line.compare(start, 2, "%@") == 0) {
			auto end = line.find_first_of(" \t\r", start);
			std::string marker = line.substr(start + 2, end == std::string::npos ? std::string::npos : end - start - 2);
			if (marker != "exists" && marker != "forall" && marker != "check") {
				throw SyntaxError("unknown marker %@" + marker, line_no + 1, static_cast<int>(start) + 1);
			}
			if (sections.back().marker == "check") { throw SyntaxError("%@check must be the last section", line_no + 1, 1); }
			sections.push_back({marker, "", line_no + 1});
			line = end == std::string::npos ? "" : line.substr(end);
		}
		sections.back().body += line + "\n";
		++line_no;
	}
	auto preamble = syntax::parse(sections[0].body);
	if (!preamble.rules.empty()) { throw InvalidInput("rules must follow a %@exists or %@forall marker"); }
	std::vector<syntax::ParsedProgram> parsed;
	for (std::size_t i = 1; i < sections.size(); ++i) {
		parsed.push_back(syntax::parse(sections[i].body, {false, sections[i].line - 1}));
		for (const auto& [k, v] : parsed.back().consts) { preamble.consts.try_emplace(k, v); }
	}
	AspqProgram out;
	GroundOptions opts;
	for (std::size_t i = 1; i < sections.size(); ++i) {
		auto& p = parsed[i - 1];
		p.consts = preamble.consts;
		Program g = ground(p, opts);
		opts.seeds.insert(g.universe().begin(), g.universe().end());
		if (sections[i].marker == "check") { out.check = std::move(g); }
		else { out.blocks.push_back({sections[i].marker == "exists" ? Quantifier::Exists : Quantifier::Forall, std::move(g)}); }
	}
	out.validate();
	return out;
}

std::string to_text(const AspqProgram& pi) {
	std::string out;
	for (const auto& b : pi.blocks) {
		out += b.kind == Quantifier::Exists ? "%@exists\n" : "%@forall\n";
		out += to_string(b.program);
	}
	if (!pi.check.empty()) { out += "%@check\n" + to_string(pi.check); }
	return out;
}

} // namespace qasp
