#include <qasp/bench.hpp>
#include <qasp/error.hpp>

#include <json.hpp>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qasp {

using json = nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
	std::ifstream in(p);
	if (!in) { throw InvalidInput("cannot read " + p.string()); }
	std::stringstream s;
	s << in.rdbuf();
	return s.str();
}

json to_json(const BenchResult& r) {
	json j{{"finished", r.finished}, {"error", r.error}, {"plan", r.plan}, {"seconds", r.seconds}, {"as_expected", r.as_expected}};
	j["horizon"] = r.horizon ? json(*r.horizon) : json(nullptr);
	return j;
}

void from_json(const json& j, BenchResult& r) {
	r.finished = j.at("finished").get<bool>();
	r.error = j.at("error").get<std::string>();
	r.plan = j.at("plan").get<std::string>();
	r.seconds = j.at("seconds").get<double>();
	r.as_expected = j.at("as_expected").get<bool>();
	if (!j.at("horizon").is_null()) { r.horizon = j.at("horizon").get<int>(); }
}

BenchResult skeleton(const BenchInstance& inst) {
	BenchResult r;
	r.name = inst.name;
	r.domain = inst.domain;
	r.mode = inst.mode;
	return r;
}

} // namespace

std::vector<BenchInstance> load_suite(const std::filesystem::path& dir) {
	auto path = dir / "manifest.json";
	json m;
	try {
		m = json::parse(slurp(path));
	} catch (const json::exception& e) {
		throw InvalidInput(path.string() + ": " + e.what());
	}
	std::vector<BenchInstance> out;
	try {
		for (const auto& j : m.at("instances")) {
			BenchInstance inst;
			inst.name = j.at("name").get<std::string>();
			inst.domain = j.at("domain").get<std::string>();
			inst.file = dir / j.at("file").get<std::string>();
			if (j.contains("consts")) { inst.consts = j.at("consts").get<std::map<std::string, std::int64_t>>(); }
			inst.mode = parse_mode(j.at("mode").get<std::string>());
			inst.max_horizon = j.at("max_horizon").get<int>();
			if (inst.max_horizon < 1) { throw InvalidInput(inst.name + ": max_horizon must be positive"); }
			if (j.contains("expect") && !j.at("expect").is_null()) { inst.expect = j.at("expect").get<int>(); }
			out.push_back(std::move(inst));
		}
	} catch (const json::exception& e) {
		throw InvalidInput(path.string() + ": " + e.what());
	}
	return out;
}

PlanningDescription load_description(const BenchInstance& inst) { return parse_description(slurp(inst.file), inst.consts); }

BenchResult run_instance(const BenchInstance& inst, const Backend& backend) {
	BenchResult r = skeleton(inst);
	auto start = std::chrono::steady_clock::now();
	try {
		auto dd = load_description(inst);
		if (auto found = solve_incremental(dd, inst.mode, inst.max_horizon, backend)) {
			r.horizon = found->horizon;
			r.plan = to_string(found->solution.plan);
		}
		r.finished = true;
		r.as_expected = r.horizon == inst.expect;
	} catch (const Error& e) {
		r.error = e.what();
	}
	r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return r;
}

std::vector<BenchResult> run_suite(const std::vector<BenchInstance>& suite, const BenchOptions& opts) {
	using Clock = std::chrono::steady_clock;
	struct Child {
		pid_t pid;
		int fd;
		std::size_t index;
		Clock::time_point start;
		std::string data;
	};
	std::vector<BenchResult> out;
	for (const auto& inst : suite) { out.push_back(skeleton(inst)); }
	std::vector<Child> running;
	std::size_t next = 0;
	std::fflush(nullptr);

	auto finish = [&](Child& c, bool killed) {
		if (killed) { kill(c.pid, SIGKILL); }
		close(c.fd);
		int status = 0;
		waitpid(c.pid, &status, 0);
		BenchResult& r = out[c.index];
		double wall = std::chrono::duration<double>(Clock::now() - c.start).count();
		if (killed) {
			r.timeout = true;
			r.seconds = wall;
			return;
		}
		try {
			from_json(json::parse(c.data), r);
		} catch (const json::exception&) {
			r.error = "benchmark process failed";
			r.seconds = wall;
		}
	};

	while (next < suite.size() || !running.empty()) {
		while (next < suite.size() && running.size() < static_cast<std::size_t>(std::max(1, opts.jobs))) {
			int fds[2];
			if (pipe(fds) != 0) { throw Error("pipe failed"); }
			pid_t pid = fork();
			if (pid < 0) { throw Error("fork failed"); }
			if (pid == 0) {
				close(fds[0]);
				std::string msg = to_json(run_instance(suite[next], opts.backend)).dump();
				for (std::size_t done = 0; done < msg.size();) {
					ssize_t n = write(fds[1], msg.data() + done, msg.size() - done);
					if (n <= 0) { break; }
					done += static_cast<std::size_t>(n);
				}
				_exit(0);
			}
			close(fds[1]);
			running.push_back({pid, fds[0], next++, Clock::now(), {}});
		}
		std::vector<pollfd> pfds;
		for (const auto& c : running) { pfds.push_back({c.fd, POLLIN, 0}); }
		if (poll(pfds.data(), pfds.size(), 20) < 0 && errno != EINTR) { throw Error("poll failed"); }
		for (std::size_t i = running.size(); i-- > 0;) {
			Child& c = running[i];
			bool done = false;
			if (pfds[i].revents & (POLLIN | POLLHUP | POLLERR)) {
				char buf[4096];
				ssize_t n = read(c.fd, buf, sizeof buf);
				if (n > 0) { c.data.append(buf, static_cast<std::size_t>(n)); }
				else {
					finish(c, false);
					done = true;
				}
			}
			if (!done && Clock::now() - c.start > opts.timeout) {
				finish(c, true);
				done = true;
			}
			if (done) { running.erase(running.begin() + static_cast<std::ptrdiff_t>(i)); }
		}
	}
	return out;
}

std::vector<DomainRow> summarize(const std::vector<BenchResult>& results) {
	std::vector<DomainRow> rows;
	for (const auto& r : results) {
		auto it = std::find_if(rows.begin(), rows.end(), [&](const DomainRow& d) { return d.domain == r.domain; });
		if (it == rows.end()) {
			rows.push_back({r.domain});
			it = rows.end() - 1;
		}
		++it->instances;
		it->solved += r.finished && r.error.empty();
		it->timeouts += r.timeout;
		it->avg_seconds += r.seconds;
	}
	for (auto& d : rows) { d.avg_seconds /= d.instances; }
	return rows;
}

std::string format_table(const std::vector<DomainRow>& rows) {
	std::ostringstream out;
	out << std::left << std::setw(10) << "domain" << std::right << std::setw(10) << "instances" << std::setw(8) << "solved"
	    << std::setw(10) << "avg[s]" << std::setw(10) << "timeouts" << "\n";
	for (const auto& d : rows) {
		out << std::left << std::setw(10) << d.domain << std::right << std::setw(10) << d.instances << std::setw(8) << d.solved
		    << std::setw(10) << std::fixed << std::setprecision(3) << d.avg_seconds << std::setw(10) << d.timeouts << "\n";
	}
	return out.str();
}

std::string format_records(const std::vector<BenchResult>& results, const std::vector<DomainRow>& rows) {
	std::ostringstream out;
	out << std::fixed << std::setprecision(3);
	for (const auto& r : results) {
		out << "instance name=" << r.name << " domain=" << r.domain << " mode=" << to_string(r.mode);
		if (r.timeout) { out << " status=timeout"; }
		else if (!r.error.empty()) { out << " status=error"; }
		else { out << " status=" << (r.horizon ? "sat horizon=" + std::to_string(*r.horizon) : std::string("unsat")); }
		out << " expected=" << (r.as_expected ? "yes" : "no") << " seconds=" << r.seconds << "\n";
	}
	for (const auto& d : rows) {
		out << "domain name=" << d.domain << " instances=" << d.instances << " solved=" << d.solved << " timeouts=" << d.timeouts
		    << " avg_seconds=" << d.avg_seconds << "\n";
	}
	return out.str();
}

std::vector<bool> answers(const BenchInstance& inst, const Backend& backend) {
	auto dd = load_description(inst);
	std::vector<bool> out;
	for (int n = 1; n <= inst.max_horizon; ++n) { out.push_back(decide(encode(dd, inst.mode, n).qlp, backend).satisfiable); }
	return out;
}

} // namespace qasp
