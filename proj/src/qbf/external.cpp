#include <qasp/error.hpp>
#include <qasp/qbf.hpp>

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace qasp {

namespace {

struct TempFile {
	std::string path;
	TempFile() {
		const char* dir = std::getenv("TMPDIR");
		std::string tmpl = std::string(dir && *dir ? dir : "/tmp") + "/qasp-XXXXXX.qdimacs";
		std::vector<char> buf(tmpl.begin(), tmpl.end());
		buf.push_back('\0');
		int fd = mkstemps(buf.data(), 8);
		if (fd < 0) { throw SolverError(std::string("cannot create temporary file: ") + std::strerror(errno)); }
		close(fd);
		path = buf.data();
	}
	~TempFile() { std::remove(path.c_str()); }
};

struct Outcome {
	std::string out;
	int exit_code = -1;
};

Outcome run(const std::vector<std::string>& command, const std::string& file, std::chrono::milliseconds timeout) {
	int pipefd[2];
	if (pipe(pipefd) != 0) { throw SolverError(std::string("pipe: ") + std::strerror(errno)); }
	// exec failures are reported through a close-on-exec pipe
	int errpipe[2];
	if (pipe2(errpipe, O_CLOEXEC) != 0) { throw SolverError(std::string("pipe: ") + std::strerror(errno)); }
	pid_t pid = fork();
	if (pid < 0) { throw SolverError(std::string("fork: ") + std::strerror(errno)); }
	if (pid == 0) {
		dup2(pipefd[1], STDOUT_FILENO);
		int devnull = open("/dev/null", O_RDWR);
		if (devnull >= 0) {
			dup2(devnull, STDIN_FILENO);
			dup2(devnull, STDERR_FILENO);
		}
		close(pipefd[0]);
		close(pipefd[1]);
		close(errpipe[0]);
		std::vector<char*> argv;
		for (const auto& a : command) { argv.push_back(const_cast<char*>(a.c_str())); }
		argv.push_back(const_cast<char*>(file.c_str()));
		argv.push_back(nullptr);
		execvp(argv[0], argv.data());
		int e = errno;
		(void)!write(errpipe[1], &e, sizeof e);
		_exit(127);
	}
	close(pipefd[1]);
	close(errpipe[1]);
	int exec_errno = 0;
	bool exec_failed = read(errpipe[0], &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno);
	close(errpipe[0]);
	if (exec_failed) {
		close(pipefd[0]);
		waitpid(pid, nullptr, 0);
		throw SolverError("cannot run " + command[0] + ": " + std::strerror(exec_errno));
	}
	Outcome o;
	auto deadline = std::chrono::steady_clock::now() + timeout;
	char buf[4096];
	for (;;) {
		auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
		if (left.count() <= 0) {
			kill(pid, SIGKILL);
			waitpid(pid, nullptr, 0);
			close(pipefd[0]);
			throw SolverError(command[0] + " timed out");
		}
		pollfd pfd{pipefd[0], POLLIN, 0};
		int r = poll(&pfd, 1, static_cast<int>(left.count()));
		if (r < 0 && errno == EINTR) { continue; }
		if (r == 0) { continue; }
		ssize_t k = read(pipefd[0], buf, sizeof buf);
		if (k < 0 && errno == EINTR) { continue; }
		if (k <= 0) { break; }
		o.out.append(buf, static_cast<std::size_t>(k));
	}
	close(pipefd[0]);
	int status = 0;
	waitpid(pid, &status, 0);
	o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	return o;
}

} // namespace

SatResult solve_external(const QbfProblem& q, const ExternalSolver& solver) {
	if (solver.command.empty()) { throw SolverError("no solver command given"); }
	TempFile file;
	{
		std::ofstream f(file.path);
		f << emit_qdimacs(q);
		if (!f) { throw SolverError("cannot write " + file.path); }
	}
	Outcome o = run(solver.command, file.path, solver.timeout);
	std::optional<bool> answer;
	std::set<int> positive;
	bool values = false;
	std::istringstream in(o.out);
	std::string line;
	while (std::getline(in, line)) {
		std::istringstream ls(line);
		std::string tok;
		if (!(ls >> tok)) { continue; }
		if (tok == "s") {
			std::string fmt, val;
			if (!(ls >> fmt >> val) || fmt != "cnf" || (val != "0" && val != "1")) { throw SolverError("unreadable result line: " + line); }
			answer = val == "1";
		}
		else if (tok == "V") {
			int lit = 0;
			if (!(ls >> lit)) { throw SolverError("unreadable value line: " + line); }
			values = true;
			if (lit > 0) { positive.insert(lit); }
		}
	}
	if (!answer) {
		if (o.exit_code == 10) { answer = true; }
		else if (o.exit_code == 20) { answer = false; }
		else { throw SolverError(solver.command[0] + " gave no answer (exit code " + std::to_string(o.exit_code) + ")"); }
	}
	SatResult r;
	r.satisfiable = *answer;
	auto prefix = merge_adjacent(q.prefix);
	if (r.satisfiable && values && !prefix.empty() && prefix[0].kind == Quantifier::Exists) {
		Interpretation w;
		for (int v : q.prefix[0].vars) {
			auto it = q.map.atom.find(v);
			if (it != q.map.atom.end() && positive.contains(v)) { w.insert(it->second); }
		}
		r.witness = std::move(w);
	}
	return r;
}

} // namespace qasp
