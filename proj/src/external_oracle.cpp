#include "sbfr/external_oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <regex>

#include "sbfr/errors.hpp"

extern char** environ;

namespace sbfr {

std::string_view to_string(FailConvention c) {
    switch (c) {
        case FailConvention::ExitCode: return "exit-code";
        case FailConvention::StdoutToken: return "stdout";
        case FailConvention::Either: return "either";
    }
    return "?";
}

FailConvention parse_fail_convention(std::string_view s) {
    if (s == "exit-code" || s == "exit") return FailConvention::ExitCode;
    if (s == "stdout") return FailConvention::StdoutToken;
    if (s == "either") return FailConvention::Either;
    throw InvalidArgument("unknown fail convention '" + std::string(s) + "'");
}

std::string format_coordinate(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string expand_command(std::string_view command_template, const Point& p) {
    static const std::regex placeholder(R"(\{x([0-9]+)\})");
    const std::string tmpl(command_template);
    std::vector<bool> seen(p.dim(), false);
    std::string out;
    auto last = tmpl.cbegin();
    for (std::sregex_iterator it(tmpl.begin(), tmpl.end(), placeholder), end; it != end; ++it) {
        const auto& m = *it;
        const std::size_t idx = std::stoul(m[1].str());
        if (idx < 1 || idx > p.dim()) {
            throw InvalidArgument("placeholder " + m.str() + " outside dimension " + std::to_string(p.dim()));
        }
        seen[idx - 1] = true;
        out.append(last, m[0].first);
        out += format_coordinate(p[idx - 1]);
        last = m[0].second;
    }
    out.append(last, tmpl.cend());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw InvalidArgument("command template lacks placeholder {x" + std::to_string(i + 1) + "}");
    }
    return out;
}

ExternalProgramOracle::ExternalProgramOracle(std::string command_template, std::size_t d,
                                             FailConvention convention, std::chrono::milliseconds timeout)
    : template_(std::move(command_template)), d_(d), convention_(convention), timeout_(timeout) {
    if (d_ == 0) throw InvalidArgument("dimension must be at least 1");
    // Validates the placeholders once up front.
    expand_command(template_, Point(std::vector<double>(d_, 0.0)));
}

namespace {

struct Pipe {
    int fd[2] = {-1, -1};
    ~Pipe() {
        for (int f : fd) {
            if (f >= 0) ::close(f);
        }
    }
    void close_end(int i) {
        if (fd[i] >= 0) ::close(fd[i]);
        fd[i] = -1;
    }
};

} // namespace

Verdict ExternalProgramOracle::evaluate(const Point& p) {
    if (p.dim() != d_) throw InvalidArgument("point dimension does not match the external oracle");
    const std::string command = expand_command(template_, p);

    Pipe out;
    if (::pipe2(out.fd, O_CLOEXEC) != 0) throw OracleUnavailable(std::string("pipe: ") + std::strerror(errno));

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out.fd[1], STDOUT_FILENO);
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    const char* argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
    pid_t pid = -1;
    const int rc = ::posix_spawn(&pid, "/bin/sh", &actions, &attr, const_cast<char* const*>(argv), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) throw OracleUnavailable("cannot spawn '" + command + "': " + std::strerror(rc));
    out.close_end(1);

    std::string captured;
    bool timed_out = false;
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    char buf[4096];
    for (;;) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            timed_out = true;
            break;
        }
        pollfd pfd{out.fd[0], POLLIN, 0};
        const int pr = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1 << 30)));
        if (pr < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (pr == 0) continue;
        const ssize_t n = ::read(out.fd[0], buf, sizeof buf);
        if (n > 0) {
            captured.append(buf, static_cast<std::size_t>(n));
            continue;
        }
        if (n < 0 && errno == EINTR) continue;
        break;  // EOF
    }

    if (timed_out) ::kill(-pid, SIGKILL);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (timed_out) {
        ++timeouts_;
        std::cerr << "warning: external oracle timed out after " << timeout_.count() << " ms on '" << command
                  << "'; counted as Pass\n";
        return Verdict::Pass;
    }

    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    if (code == 126 || code == 127) {
        throw OracleUnavailable("external oracle could not run '" + command + "' (shell status " +
                                std::to_string(code) + ")");
    }
    const bool exit_fail = code != 0;
    const bool token_fail = captured.find("FAIL") != std::string::npos;
    switch (convention_) {
        case FailConvention::ExitCode: return exit_fail ? Verdict::Fail : Verdict::Pass;
        case FailConvention::StdoutToken: return token_fail ? Verdict::Fail : Verdict::Pass;
        case FailConvention::Either: break;
    }
    return exit_fail || token_fail ? Verdict::Fail : Verdict::Pass;
}

} // namespace sbfr
