#include <qasp/aspq.hpp>
#include <qasp/backend.hpp>
#include <qasp/bench.hpp>
#include <qasp/encoders.hpp>
#include <qasp/error.hpp>
#include <qasp/planning.hpp>
#include <qasp/qbf.hpp>
#include <qasp/qlp.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qasp;

namespace {

constexpr int kSat = 10;
constexpr int kUnsat = 20;
constexpr int kError = 1;

struct Config {
	std::string backend = "internal";
	std::string solver;
	double solver_timeout = 60;
	std::string format = "text";
	std::vector<std::string> consts;
};

std::string slurp(const std::string& path) {
	std::ifstream in(path);
	if (!in) { throw InvalidInput("cannot read " + path); }
	std::stringstream s;
	s << in.rdbuf();
	return s.str();
}

Backend make_backend(const Config& cfg) {
	Backend b;
	b.kind = parse_backend(cfg.backend);
	if (b.kind == BackendKind::External) {
		std::istringstream words(cfg.solver);
		for (std::string w; words >> w;) { b.external.command.push_back(w); }
		if (b.external.command.empty()) { throw InvalidInput("the external backend needs --solver"); }
		if (cfg.solver_timeout <= 0) { throw InvalidInput("--solver-timeout must be positive"); }
		b.external.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(cfg.solver_timeout * 1000));
	}
	return b;
}

std::map<std::string, std::int64_t> parse_consts(const std::vector<std::string>& defs) {
	std::map<std::string, std::int64_t> out;
	for (const auto& d : defs) {
		auto eq = d.find('=');
		if (eq == std::string::npos || eq == 0) { throw InvalidInput("--const expects name=value, got " + d); }
		try {
			out[d.substr(0, eq)] = std::stoll(d.substr(eq + 1));
		} catch (const std::exception&) {
			throw InvalidInput("--const value is not an integer: " + d);
		}
	}
	return out;
}

std::string atoms(const Interpretation& x) {
	std::string out;
	for (const auto& a : x) { out += (out.empty() ? "" : " ") + a.to_string(); }
	return out;
}

int cmd_solve(const std::string& file, const Config& cfg) {
	std::vector<std::string> warnings;
	auto qp = parse_qlp(slurp(file), &warnings);
	for (const auto& w : warnings) { std::cerr << "warning: " << w << "\n"; }
	auto r = decide(qp, make_backend(cfg));
	if (cfg.format == "lines") {
		std::cout << "result status=" << (r.satisfiable ? "sat" : "unsat");
		if (r.witness) { std::cout << " witness=" << to_string(*r.witness); }
		std::cout << "\n";
	} else {
		std::cout << (r.satisfiable ? "SAT" : "UNSAT") << "\n";
		if (r.witness) { std::cout << "witness: " << atoms(*r.witness) << "\n"; }
	}
	return r.satisfiable ? kSat : kUnsat;
}

// prints the failures; true when both properties hold
bool check_dynamics(const PlanningDescription& dd, std::ostream& out) {
	Dynamics d(dd.dynamic, dd.sig);
	auto state = [](const State& s) { return to_string(Interpretation(s.begin(), s.end())); };
	bool ok = true;
	if (auto c = d.nondeterministic()) {
		out << "determinism: FAIL state " << state(c->state);
		if (c->action) { out << " action " << c->action->to_string(); }
		out << "\n";
		ok = false;
	} else {
		out << "determinism: PASS\n";
	}
	if (auto c = d.non_inertial()) {
		out << "inertia: FAIL state " << state(c->state) << "\n";
		ok = false;
	} else {
		out << "inertia: PASS\n";
	}
	return ok;
}

int cmd_check(const std::string& file, const Config& cfg) {
	auto dd = parse_description(slurp(file), parse_consts(cfg.consts));
	return check_dynamics(dd, std::cout) ? 0 : kUnsat;
}

int cmd_plan(const std::string& file, const std::string& mode_name, int max_horizon, bool validate, const Config& cfg) {
	if (max_horizon < 1) { throw InvalidInput("--max-horizon must be positive"); }
	Mode mode = parse_mode(mode_name);
	auto dd = parse_description(slurp(file), parse_consts(cfg.consts));
	if (validate) {
		std::ostringstream report;
		if (!check_dynamics(dd, report)) { throw InvalidInput("the dynamic rules are not deterministic and inertial\n" + report.str()); }
	}
	auto r = solve_incremental(dd, mode, max_horizon, make_backend(cfg));
	bool lines = cfg.format == "lines";
	if (!r) {
		if (lines) { std::cout << "plan status=none max_horizon=" << max_horizon << "\n"; }
		else { std::cout << "no plan <= " << max_horizon << "\n"; }
		return kUnsat;
	}
	const auto& s = r->solution;
	if (lines) {
		std::cout << "plan status=found n=" << r->horizon << " plan=\"" << to_string(s.plan) << "\"";
		if (mode == Mode::Assumption) {
			std::cout << " true=" << to_string(Interpretation(s.true_set.begin(), s.true_set.end()))
			          << " false=" << to_string(Interpretation(s.false_set.begin(), s.false_set.end()));
		}
		std::cout << "\n";
	} else {
		std::cout << "n=" << r->horizon << "\n" << to_string(s.plan) << "\n";
		if (mode == Mode::Assumption) {
			std::cout << "assume true: " << atoms(Interpretation(s.true_set.begin(), s.true_set.end())) << "\n";
			std::cout << "assume false: " << atoms(Interpretation(s.false_set.begin(), s.false_set.end())) << "\n";
		}
	}
	return kSat;
}

// one choice per variable and one constraint per clause
QuantifiedProgram qlp_of_qbf(const QbfProblem& q) {
	int n = q.matrix.num_vars;
	for (const auto& b : q.prefix) {
		for (int v : b.vars) { n = std::max(n, v); }
	}
	std::vector<Atom> atom(static_cast<std::size_t>(n) + 1);
	std::set<Atom> used;
	for (int v = 1; v <= n; ++v) {
		auto it = q.map.atom.find(v);
		atom[static_cast<std::size_t>(v)] = it != q.map.atom.end() ? it->second : make_atom("v", {Symbol::number(v)});
		if (!used.insert(atom[static_cast<std::size_t>(v)]).second) {
			throw InvalidInput("variable " + std::to_string(v) + " maps to an atom that is already used");
		}
	}
	QuantifiedProgram qp;
	for (int v = 1; v <= n; ++v) { qp.program.add(Rule::choice(atom[static_cast<std::size_t>(v)])); }
	for (const auto& c : q.matrix.clauses) {
		std::vector<Literal> body;
		for (int l : c) {
			const Atom& a = atom[static_cast<std::size_t>(std::abs(l))];
			body.push_back(l > 0 ? Literal::neg(a) : Literal::pos(a));
		}
		qp.program.add(Rule::constraint(body));
	}
	for (const auto& b : q.prefix) {
		QuantifierBlock qb{b.kind, {}};
		for (int v : b.vars) { qb.atoms.insert(atom[static_cast<std::size_t>(v)]); }
		if (!qb.atoms.empty()) { qp.prefix.push_back(std::move(qb)); }
	}
	qp.prefix = merge_adjacent(qp.prefix);
	return qp;
}

std::string guess_kind(const std::string& file) {
	auto dot = file.rfind('.');
	std::string ext = dot == std::string::npos ? "" : file.substr(dot + 1);
	if (ext == "qdimacs" || ext == "qcnf") { return "qdimacs"; }
	if (ext == "aspq") { return "aspq"; }
	return "qlp";
}

int cmd_translate(const std::string& file, std::string from, const std::string& to, const std::string& output) {
	if (from.empty()) { from = guess_kind(file); }
	std::string text = slurp(file);
	std::string out;
	if (from == "qlp" && to == "qdimacs") { out = emit_qdimacs(to_qbf(parse_qlp(text))); }
	else if (from == "qlp" && to == "aspq") { out = to_text(from_qlp(parse_qlp(text))); }
	else if (from == "aspq" && to == "qlp") { out = to_text(to_qlp(normalize(parse_aspq(text)))); }
	else if (from == "qdimacs" && to == "qlp") { out = to_text(qlp_of_qbf(parse_qdimacs(text))); }
	else if (from == "aspq" && to == "qdimacs") { out = emit_qdimacs(to_qbf(to_qlp(normalize(parse_aspq(text))))); }
	else { throw InvalidInput("unsupported translation " + from + " -> " + to); }
	if (output.empty() || output == "-") {
		std::cout << out;
	} else {
		std::ofstream f(output);
		if (!f) { throw InvalidInput("cannot write " + output); }
		f << out;
	}
	return 0;
}

int cmd_bench(const std::string& dir, int jobs, double timeout, const Config& cfg) {
	BenchOptions opts;
	opts.backend = make_backend(cfg);
	opts.jobs = jobs;
	opts.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout * 1000));
	auto results = run_suite(load_suite(dir), opts);
	auto rows = summarize(results);
	if (cfg.format == "lines") {
		std::cout << format_records(results, rows);
	} else {
		for (const auto& r : results) {
			std::cout << r.name << ": ";
			if (r.timeout) { std::cout << "timeout"; }
			else if (!r.error.empty()) { std::cout << "error: " << r.error; }
			else if (r.horizon) { std::cout << "n=" << *r.horizon << " " << r.plan; }
			else { std::cout << "no plan"; }
			if (r.finished && !r.as_expected) { std::cout << " (unexpected)"; }
			std::cout << "\n";
		}
		std::cout << "\n" << format_table(rows);
	}
	bool all = true;
	for (const auto& r : results) { all = all && r.finished && r.error.empty() && r.as_expected; }
	return all ? 0 : kError;
}

int cmd_qbf(const std::string& file) {
	auto q = parse_qdimacs(slurp(file));
	auto r = solve(q);
	std::cout << qdimacs_answer(q, r);
	return r.satisfiable ? kSat : kUnsat;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Quantified answer set programming toolkit"};
	app.require_subcommand(1);
	Config cfg;

	auto backend_flags = [&](CLI::App* sub) {
		sub->add_option("--backend", cfg.backend, "oracle, internal or external")->check(CLI::IsMember({"oracle", "internal", "external"}));
		sub->add_option("--solver", cfg.solver, "external QDIMACS solver command");
		sub->add_option("--solver-timeout", cfg.solver_timeout, "seconds per external solver call");
	};
	auto format_flag = [&](CLI::App* sub) {
		sub->add_option("--format", cfg.format, "text or lines")->check(CLI::IsMember({"text", "lines"}));
	};

	std::string file;
	auto* solve = app.add_subcommand("solve", "decide a quantified logic program");
	solve->add_option("file", file, "QLP file")->required();
	backend_flags(solve);
	format_flag(solve);

	std::string mode = "classical";
	int max_horizon = 10;
	bool no_validate = false;
	auto* plan = app.add_subcommand("plan", "find a plan of minimal length");
	plan->add_option("file", file, "planning description")->required();
	plan->add_option("--mode", mode, "classical, conformant, assumption or conditional")
	    ->check(CLI::IsMember({"classical", "conformant", "assumption", "conditional"}));
	plan->add_option("--max-horizon", max_horizon, "largest plan length tried");
	plan->add_flag("--no-validate", no_validate, "skip the determinism and inertia checks");
	plan->add_option("--const", cfg.consts, "override a #const, name=value");
	backend_flags(plan);
	format_flag(plan);

	auto* check = app.add_subcommand("check", "check determinism and inertia of the dynamic rules");
	check->add_option("file", file, "planning description")->required();
	check->add_option("--const", cfg.consts, "override a #const, name=value");

	std::string from, to, output;
	auto* translate = app.add_subcommand("translate", "convert between QLP, ASP(Q) and QDIMACS");
	translate->add_option("file", file, "input file")->required();
	translate->add_option("--from", from, "qlp, aspq or qdimacs (default: by extension)")->check(CLI::IsMember({"qlp", "aspq", "qdimacs"}));
	translate->add_option("--to", to, "qdimacs, qlp or aspq")->required()->check(CLI::IsMember({"qlp", "aspq", "qdimacs"}));
	translate->add_option("-o,--output", output, "output file (default: stdout)");

	std::string dir;
	int jobs = 1;
	double timeout = 60;
	auto* bench = app.add_subcommand("bench", "run a benchmark suite");
	bench->add_option("dir", dir, "suite directory with manifest.json")->required();
	bench->add_option("--jobs", jobs, "instances run in parallel")->check(CLI::PositiveNumber);
	bench->add_option("--timeout", timeout, "seconds per instance")->check(CLI::PositiveNumber);
	backend_flags(bench);
	format_flag(bench);

	auto* qbf = app.add_subcommand("qbf", "solve a QDIMACS file with the internal QBF solver");
	qbf->add_option("file", file, "QDIMACS file")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : kError;
	}

	try {
		if (*solve) { return cmd_solve(file, cfg); }
		if (*plan) { return cmd_plan(file, mode, max_horizon, !no_validate, cfg); }
		if (*check) { return cmd_check(file, cfg); }
		if (*translate) { return cmd_translate(file, from, to, output); }
		if (*bench) { return cmd_bench(dir, jobs, timeout, cfg); }
		if (*qbf) { return cmd_qbf(file); }
	} catch (const Error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kError;
	}
	return kError;
}
