#include <qasp/error.hpp>
#include <qasp/grounder.hpp>
#include <qasp/planning.hpp>

#include <sstream>

namespace qasp {

std::set<Atom> DomainSignature::actions() const {
	std::set<Atom> out = normal_actions;
	out.insert(sensing_actions.begin(), sensing_actions.end());
	return out;
}

void DomainSignature::validate() const {
	if (fluents.empty()) { throw InvalidInput("the description has no fluents"); }
	if (normal_actions.empty() && sensing_actions.empty()) { throw InvalidInput("the description has no actions"); }
	auto disjoint = [](const std::set<Atom>& a, const std::set<Atom>& b, const char* what) {
		for (const auto& x : a) {
			if (b.contains(x)) { throw InvalidInput(x.to_string() + " is declared as " + what); }
		}
	};
	disjoint(fluents, normal_actions, "a fluent and an action");
	disjoint(fluents, sensing_actions, "a fluent and a sensing action");
	disjoint(normal_actions, sensing_actions, "a normal and a sensing action");
	for (const auto& a : sensing_actions) {
		auto it = senses.find(a);
		if (it == senses.end()) { throw InvalidInput("sensing action " + a.to_string() + " observes no fluent"); }
		if (!fluents.contains(it->second)) { throw InvalidInput(a.to_string() + " senses " + it->second.to_string() + ", which is not a fluent"); }
	}
	for (const auto& f : assumables) {
		if (!fluents.contains(f)) { throw InvalidInput("assumable " + f.to_string() + " is not a fluent"); }
	}
}

Atom prev(const Atom& f) { return wrap("prev", f); }

namespace {

void check_atoms(const Program& p, const char* section, const std::function<bool(const Atom&)>& ok) {
	for (const auto& r : p.rules()) {
		std::set<Atom> atoms;
		collect_atoms(r, atoms);
		for (const auto& a : atoms) {
			if (!ok(a)) { throw InvalidInput(std::string(section) + " rule mentions " + a.to_string() + ": " + to_string(r)); }
		}
	}
}

} // namespace

void PlanningDescription::validate() const {
	sig.validate();
	auto actions = sig.actions();
	auto fluent = [&](const Atom& a) { return sig.fluents.contains(a); };
	for (const auto& r : dynamic.rules()) {
		for (const auto& e : r.head) {
			if (!fluent(e.literal.atom)) { throw InvalidInput("dynamic rule with non-fluent head: " + to_string(r)); }
		}
	}
	check_atoms(dynamic, "dynamic", [&](const Atom& a) {
		return fluent(a) || actions.contains(a) || (a.name() == "prev" && a.arity() == 1 && fluent(a.args()[0]));
	});
	check_atoms(initial, "initial", fluent);
	check_atoms(goal, "goal", fluent);
	for (const auto& r : goal.rules()) {
		if (r.type != HeadType::Constraint) { throw InvalidInput("goal rules must be integrity constraints: " + to_string(r)); }
	}
}

PlanningDescription parse_description(std::string_view text, const std::map<std::string, std::int64_t>& consts) {
	struct Section {
		std::string name;
		std::string body;
		int line = 0;
	};
	std::vector<Section> sections{{"", "", 0}};
	std::istringstream in{std::string(text)};
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		auto start = line.find_first_not_of(" \t\r");
		if (start != std::string::npos && line[start] == '@') {
			auto end = line.find_first_of(" \t\r%", start);
			std::string name = line.substr(start + 1, end == std::string::npos ? std::string::npos : end - start - 1);
			sections.push_back({name, "", line_no + 1});
			line = end == std::string::npos ? "" : line.substr(end);
		}
		sections.back().body += line + "\n";
		++line_no;
	}
	static const std::set<std::string> known{"fluents", "actions", "sensing", "assumable", "dynamic", "initial", "goal"};
	auto preamble = syntax::parse(sections[0].body);
	if (!preamble.rules.empty()) { throw InvalidInput("rules must be placed in a section"); }
	for (const auto& [k, v] : consts) { preamble.consts[k] = syntax::Term::number(v); }
	std::map<std::string, syntax::ParsedProgram> parsed;
	for (std::size_t i = 1; i < sections.size(); ++i) {
		const auto& s = sections[i];
		if (!known.contains(s.name)) { throw SyntaxError("unknown section @" + s.name, s.line, 1); }
		auto p = syntax::parse(s.body, {s.name == "sensing", s.line - 1});
		for (const auto& [k, v] : p.consts) {
			if (!consts.contains(k)) { preamble.consts[k] = v; }
		}
		parsed[s.name].append(std::move(p));
	}
	auto program = [&](const std::string& name, const GroundOptions& opts = {}) {
		auto p = parsed[name];
		for (const auto& [k, v] : preamble.consts) { p.consts[k] = v; }
		return ground(p, opts);
	};
	auto facts = [&](const std::string& name) {
		std::set<Atom> out;
		Program prog = program(name);
		for (const auto& r : prog.rules()) {
			if (!r.is_fact()) { throw InvalidInput("@" + name + " may only contain facts: " + to_string(r)); }
			out.insert(r.head_atom());
		}
		return out;
	};
	PlanningDescription dd;
	dd.sig.fluents = facts("fluents");
	dd.sig.normal_actions = facts("actions");
	for (const auto& a : facts("sensing")) {
		if (a.name() != "senses" || a.arity() != 2) { throw InvalidInput("@sensing expects `action senses fluent`: " + a.to_string()); }
		dd.sig.sensing_actions.insert(a.args()[0]);
		if (!dd.sig.senses.emplace(a.args()[0], a.args()[1]).second) { throw InvalidInput(a.args()[0].to_string() + " senses two fluents"); }
	}
	dd.sig.assumables = facts("assumable");
	dd.sig.validate();
	GroundOptions dyn;
	for (const auto& f : dd.sig.fluents) {
		dyn.seeds.insert(f);
		dyn.seeds.insert(prev(f));
	}
	for (const auto& a : dd.sig.actions()) { dyn.seeds.insert(a); }
	GroundOptions state;
	state.seeds = dd.sig.fluents;
	dd.dynamic = program("dynamic", dyn);
	dd.initial = program("initial", state);
	dd.goal = program("goal", state);
	dd.validate();
	return dd;
}

} // namespace qasp
