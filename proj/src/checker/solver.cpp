#include "avc/checker/solver.hpp"

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace avc::checker {

namespace {

class TempScript {
public:
    explicit TempScript(const std::string& contents) {
        const char* dir = std::getenv("TMPDIR");
        std::string pattern = std::string(dir && *dir ? dir : "/tmp") + "/avc-smt-XXXXXX";
        std::vector<char> buf(pattern.begin(), pattern.end());
        buf.push_back('\0');
        fd_ = mkstemp(buf.data());
        if (fd_ < 0) return;
        path_ = buf.data();
        std::size_t off = 0;
        while (off < contents.size()) {
            ssize_t n = write(fd_, contents.data() + off, contents.size() - off);
            if (n < 0 && errno == EINTR) continue;
            if (n <= 0) {
                ok_ = false;
                return;
            }
            off += static_cast<std::size_t>(n);
        }
        ok_ = true;
    }
    ~TempScript() {
        if (fd_ >= 0) close(fd_);
        if (!path_.empty()) unlink(path_.c_str());
    }
    TempScript(const TempScript&) = delete;
    TempScript& operator=(const TempScript&) = delete;

    bool ok() const { return ok_; }
    const std::string& path() const { return path_; }

private:
    int fd_ = -1;
    bool ok_ = false;
    std::string path_;
};

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

}  // namespace

SolverRun run_solver(const SolverConfig& cfg, const std::string& script) {
    SolverRun run;
    TempScript file(script);
    if (!file.ok()) {
        run.failure = "cannot write solver script: " + std::string(std::strerror(errno));
        return run;
    }

    std::string command = cfg.command;
    bool uses_file = false;
    for (std::size_t at; (at = command.find("{file}")) != std::string::npos;) {
        command.replace(at, 6, shell_quote(file.path()));
        uses_file = true;
    }

    int out_pipe[2];
    if (pipe(out_pipe) != 0) {
        run.failure = "cannot create pipe: " + std::string(std::strerror(errno));
        return run;
    }

    const pid_t pid = fork();
    if (pid < 0) {
        close(out_pipe[0]);
        close(out_pipe[1]);
        run.failure = "cannot launch solver: " + std::string(std::strerror(errno));
        return run;
    }
    if (pid == 0) {
        setpgid(0, 0);
        const int in = uses_file ? open("/dev/null", O_RDONLY) : open(file.path().c_str(), O_RDONLY);
        const int err = open("/dev/null", O_WRONLY);
        if (in >= 0) dup2(in, STDIN_FILENO);
        if (err >= 0) dup2(err, STDERR_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    setpgid(pid, pid);
    close(out_pipe[1]);

    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(
                                             std::chrono::duration<double>(cfg.timeout_seconds));
    char buf[4096];
    while (true) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
        if (left <= 0) {
            run.timed_out = true;
            break;
        }
        pollfd p{out_pipe[0], POLLIN, 0};
        const int ready = poll(&p, 1, static_cast<int>(std::min<long long>(left, 100)));
        if (ready < 0 && errno == EINTR) continue;
        if (ready == 0) continue;
        const ssize_t n = read(out_pipe[0], buf, sizeof buf);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        run.output.append(buf, static_cast<std::size_t>(n));
    }
    close(out_pipe[0]);

    int status = 0;
    if (run.timed_out) {
        kill(-pid, SIGKILL);
        kill(pid, SIGKILL);
    }
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) run.exit_code = WEXITSTATUS(status);

    if (run.timed_out) {
        run.failure = "timeout";
        return run;
    }
    std::istringstream lines(run.output);
    for (std::string line; std::getline(lines, line);) {
        line = trim(line);
        if (line == "sat" || line == "unsat" || line == "unknown") {
            run.answer = line;
            break;
        }
    }
    if (!run.answer) {
        if (run.exit_code == 127)
            run.failure = "solver not found: " + cfg.command;
        else
            run.failure = "malformed solver output (exit code " + std::to_string(run.exit_code) + ")";
    }
    return run;
}

}  // namespace avc::checker
