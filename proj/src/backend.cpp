#include "cegio/backend.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace cegio {

/* --- solver configuration ------------------------------------------ */

namespace {

std::string trim(std::string s)
{
	size_t a = s.find_first_not_of(" \t\r\n");
	if (a == std::string::npos)
		return "";
	size_t b = s.find_last_not_of(" \t\r\n");
	return s.substr(a, b - a + 1);
}

/* shell-like splitting with double-quote grouping */
std::vector<std::string> split_command(const std::string &s)
{
	std::vector<std::string> out;
	std::string cur;
	bool in_quote = false, any = false;
	for (char c : s) {
		if (c == '"') {
			in_quote = !in_quote;
			any = true;
			continue;
		}
		if (!in_quote && isspace((unsigned char)c)) {
			if (any || !cur.empty())
				out.push_back(cur);
			cur.clear();
			any = false;
			continue;
		}
		cur += c;
	}
	if (any || !cur.empty())
		out.push_back(cur);
	return out;
}

} // namespace

std::vector<SolverConfig> load_solver_configs(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw BackendError("cannot open solver config '" + path + "'");
	std::vector<SolverConfig> out;
	SolverConfig *cur = nullptr;
	std::string line;
	size_t lineno = 0;
	while (std::getline(in, line)) {
		lineno++;
		std::string t = trim(line);
		if (t.empty() || t[0] == '#' || t[0] == ';')
			continue;
		if (t.front() == '[' && t.back() == ']') {
			std::string name = trim(t.substr(1, t.size() - 2));
			if (name.empty())
				throw BackendError(path + ":" +
				                   std::to_string(lineno) +
				                   ": empty section name");
			out.emplace_back();
			cur = &out.back();
			cur->name = name;
			continue;
		}
		size_t eq = t.find('=');
		if (eq == std::string::npos || !cur)
			throw BackendError(path + ":" + std::to_string(lineno) +
			                   ": expected 'key = value' inside a "
			                   "[section]");
		std::string key = trim(t.substr(0, eq));
		std::string val = trim(t.substr(eq + 1));
		if (key == "cmd") {
			cur->argv = split_command(val);
			if (cur->argv.empty())
				throw BackendError(path + ":" +
				                   std::to_string(lineno) +
				                   ": empty cmd");
		} else if (key == "timeout") {
			try {
				cur->timeout_sec = std::stod(val);
			} catch (...) {
				throw BackendError(path + ":" +
				                   std::to_string(lineno) +
				                   ": bad timeout '" + val + "'");
			}
		} else if (key == "logic") {
			cur->logic = val;
		} else {
			throw BackendError(path + ":" + std::to_string(lineno) +
			                   ": unknown key '" + key + "'");
		}
	}
	for (const SolverConfig &c : out)
		if (c.argv.empty())
			throw BackendError(path + ": section [" + c.name +
			                   "] has no cmd");
	return out;
}

SolverConfig resolve_solver(const std::string &path, const std::string &name)
{
	std::string p = path;
	if (p.empty()) {
		const char *env = std::getenv("CEGIO_SOLVERS");
		if (!env || !*env)
			throw BackendError("no solver config given and "
			                   "CEGIO_SOLVERS is not set");
		p = env;
	}
	std::vector<SolverConfig> all = load_solver_configs(p);
	if (all.empty())
		throw BackendError(p + ": no solver sections");
	if (name.empty())
		return all.front();
	for (const SolverConfig &c : all)
		if (c.name == name)
			return c;
	throw BackendError(p + ": no [" + name + "] section");
}

/* --- process driver ------------------------------------------------- */

namespace {

struct temp_file {
	std::string path;
	~temp_file()
	{
		if (!path.empty())
			unlink(path.c_str());
	}
};

[[noreturn]] void child_exec(const std::vector<std::string> &argv, int in_fd,
                             int out_fd)
{
	signal(SIGPIPE, SIG_DFL); /* undo the parent's SIG_IGN */
	dup2(in_fd, STDIN_FILENO);
	dup2(out_fd, STDOUT_FILENO);
	dup2(out_fd, STDERR_FILENO); /* diagnostics belong in `detail` */
	std::vector<char *> cargv;
	cargv.reserve(argv.size() + 1);
	for (const std::string &a : argv)
		cargv.push_back(const_cast<char *>(a.c_str()));
	cargv.push_back(nullptr);
	execvp(cargv[0], cargv.data());
	/* exec failed; report via the (now redirected) stdout */
	std::string msg = "exec failed: ";
	msg += strerror(errno);
	msg += "\n";
	ssize_t ignored = write(STDOUT_FILENO, msg.data(), msg.size());
	(void)ignored;
	_exit(127);
}

} // namespace

Verdict run_solver(const SmtScript &script, const SolverConfig &cfg)
{
	/* a solver dying mid-feed must surface as EPIPE, not kill us */
	static const bool sigpipe_ignored = [] {
		signal(SIGPIPE, SIG_IGN);
		return true;
	}();
	(void)sigpipe_ignored;

	if (cfg.argv.empty())
		throw BackendError("solver '" + cfg.name + "' has no command");

	std::vector<std::string> argv = cfg.argv;
	temp_file tmp;
	bool via_file = false;
	for (std::string &a : argv) {
		size_t pos = a.find("{file}");
		if (pos == std::string::npos)
			continue;
		if (tmp.path.empty()) {
			char buf[] = "/tmp/cegio-XXXXXX";
			int fd = mkstemp(buf);
			if (fd < 0)
				throw BackendError("mkstemp failed");
			ssize_t w = write(fd, script.text.data(),
			                  script.text.size());
			close(fd);
			if (w != (ssize_t)script.text.size())
				throw BackendError("short write to temp file");
			tmp.path = buf;
		}
		a = a.substr(0, pos) + tmp.path + a.substr(pos + 6);
		via_file = true;
	}

	int in_pipe[2], out_pipe[2];
	if (pipe(in_pipe) < 0 || pipe(out_pipe) < 0)
		throw BackendError("pipe failed");
	pid_t pid = fork();
	if (pid < 0)
		throw BackendError("fork failed");
	if (pid == 0) {
		close(in_pipe[1]);
		close(out_pipe[0]);
		child_exec(argv, in_pipe[0], out_pipe[1]);
	}
	close(in_pipe[0]);
	close(out_pipe[1]);

	/* feed the script (unless it went via the temp file) */
	fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
	fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
	const std::string &text = script.text;
	size_t sent = via_file ? text.size() : 0;
	bool stdin_open = !via_file;
	if (via_file)
		close(in_pipe[1]);

	std::string output;
	auto deadline = std::chrono::steady_clock::now() +
	                std::chrono::duration<double>(cfg.timeout_sec);
	bool timed_out = false;
	while (true) {
		struct pollfd fds[2];
		nfds_t n = 0;
		fds[n].fd = out_pipe[0];
		fds[n].events = POLLIN;
		n++;
		if (stdin_open) {
			fds[n].fd = in_pipe[1];
			fds[n].events = POLLOUT;
			n++;
		}
		auto now = std::chrono::steady_clock::now();
		if (now >= deadline) {
			timed_out = true;
			break;
		}
		int ms = (int)std::chrono::duration_cast<std::chrono::milliseconds>(
		             deadline - now)
		             .count() +
		         1;
		int rc = poll(fds, n, ms);
		if (rc < 0) {
			if (errno == EINTR)
				continue;
			break;
		}
		if (rc == 0) {
			timed_out = true;
			break;
		}
		if (fds[0].revents & (POLLIN | POLLHUP)) {
			char buf[65536];
			ssize_t got = read(out_pipe[0], buf, sizeof buf);
			if (got > 0) {
				output.append(buf, (size_t)got);
				continue;
			}
			if (got == 0)
				break; /* solver closed its end: done */
			if (errno != EAGAIN && errno != EINTR)
				break;
		}
		if (stdin_open && n > 1 &&
		    (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
			if (fds[1].revents & (POLLERR | POLLHUP)) {
				/* solver closed stdin early (or died) */
				close(in_pipe[1]);
				stdin_open = false;
				continue;
			}
			ssize_t w = write(in_pipe[1], text.data() + sent,
			                  text.size() - sent);
			if (w > 0)
				sent += (size_t)w;
			else if (w < 0 && errno != EAGAIN && errno != EINTR) {
				close(in_pipe[1]);
				stdin_open = false;
				continue;
			}
			if (sent == text.size()) {
				close(in_pipe[1]);
				stdin_open = false;
			}
		}
	}
	if (stdin_open)
		close(in_pipe[1]);
	close(out_pipe[0]);

	if (timed_out) {
		kill(pid, SIGKILL);
		waitpid(pid, nullptr, 0);
		return {VerdictKind::Timeout, {},
		        "solver exceeded " + std::to_string(cfg.timeout_sec) +
		            "s"};
	}
	int status = 0;
	waitpid(pid, &status, 0);

	/* classify by the first standalone verdict line */
	std::istringstream lines(output);
	std::string line;
	std::string verdict_word;
	size_t verdict_end = 0;
	size_t consumed = 0;
	while (std::getline(lines, line)) {
		consumed += line.size() + 1;
		std::string t = trim(line);
		if (t == "sat" || t == "unsat" || t == "unknown") {
			verdict_word = t;
			/* output may lack the final newline */
			verdict_end = std::min(consumed, output.size());
			break;
		}
	}
	if (verdict_word == "unsat")
		return {VerdictKind::Unsat, {}, ""};
	if (verdict_word == "unknown")
		return {VerdictKind::Unknown, {}, trim(output)};
	if (verdict_word == "sat") {
		Verdict v;
		v.kind = VerdictKind::Sat;
		v.witness = parse_model(
		    std::string_view(output).substr(verdict_end),
		    script.k_symbols);
		return v;
	}
	throw BackendError("solver '" + cfg.name +
	                   "' produced no verdict; output began: " +
	                   trim(output).substr(0, 500));
}

/* --- model parsing --------------------------------------------------- */

namespace {

struct sexp_parser {
	std::string_view s;
	size_t i = 0;

	void skip_ws()
	{
		while (i < s.size() && isspace((unsigned char)s[i]))
			i++;
	}

	bool at_end()
	{
		skip_ws();
		return i >= s.size();
	}

	char peek()
	{
		skip_ws();
		if (i >= s.size())
			throw BackendError("model output truncated");
		return s[i];
	}

	std::string token()
	{
		skip_ws();
		size_t start = i;
		while (i < s.size() && !isspace((unsigned char)s[i]) &&
		       s[i] != '(' && s[i] != ')')
			i++;
		if (i == start)
			throw BackendError("token expected in model output");
		return std::string(s.substr(start, i - start));
	}

	/* parse an integer value: NUM or (- NUM), or (/ ... ) rejected */
	long long value()
	{
		if (peek() == '(') {
			i++;
			std::string op = token();
			if (op != "-")
				throw BackendError("unsupported model value form (" +
				                   op + " ...)");
			long long v = value();
			if (peek() != ')')
				throw BackendError("expected ')' in model value");
			i++;
			return -v;
		}
		std::string t = token();
		try {
			size_t used = 0;
			long long v = std::stoll(t, &used);
			if (used != t.size())
				throw std::invalid_argument(t);
			return v;
		} catch (...) {
			throw BackendError("non-integer model value '" + t + "'");
		}
	}
};

} // namespace

std::vector<long long> parse_model(std::string_view output,
                                   const std::vector<std::string> &symbols)
{
	sexp_parser p{output, 0};
	if (p.at_end() || p.peek() != '(')
		throw BackendError("missing get-value output after sat");
	p.i++;
	std::map<std::string, long long> got;
	while (true) {
		if (p.peek() == ')') {
			p.i++;
			break;
		}
		if (p.peek() != '(')
			throw BackendError("expected (symbol value) pair");
		p.i++;
		std::string sym = p.token();
		long long val = p.value();
		if (p.peek() != ')')
			throw BackendError("expected ')' after value of " + sym);
		p.i++;
		got[sym] = val;
	}
	std::vector<long long> out;
	out.reserve(symbols.size());
	for (const std::string &sym : symbols) {
		auto it = got.find(sym);
		if (it == got.end())
			throw BackendError("model lacks a value for " + sym);
		out.push_back(it->second);
	}
	return out;
}

/* --- SMT-backed oracle ----------------------------------------------- */

SmtBackend::SmtBackend(SolverConfig c, EncodeOptions e)
    : cfg(std::move(c)), eopts(std::move(e))
{
	eopts.logic = cfg.logic;
}

Verdict SmtBackend::answer(const Query &q)
{
	SmtScript script = encode_query(q, eopts);
	Verdict v = run_solver(script, cfg);
	if (v.kind == VerdictKind::Sat && !q.grid.in_range(v.witness))
		throw BackendError("solver witness violates grid bounds");
	return v;
}

} // namespace cegio
