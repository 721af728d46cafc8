#include "mitl/solver.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <poll.h>
#include <signal.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace mitl {

std::string SolverConfig::default_command() {
  const char* env = std::getenv(kSolverEnv);
  return env && *env ? env : "z3 {file}";
}

const char* to_string(SolverOutcome::Kind k) {
  switch (k) {
  case SolverOutcome::Kind::Sat: return "sat";
  case SolverOutcome::Kind::NoModelAtBound: return "no-model-at-bound";
  case SolverOutcome::Kind::Unknown: return "unknown";
  case SolverOutcome::Kind::TimedOut: return "timeout";
  case SolverOutcome::Kind::SolverError: return "solver-error";
  }
  return "?";
}

namespace {

std::string sys_error(const std::string& what) { return what + ": " + std::strerror(errno); }

/// Temporary script file removed on scope exit.
class TempScript {
public:
  explicit TempScript(const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path();
    std::string tmpl = (dir / "mitlsat-XXXXXX.smt2").string();
    int fd = mkstemps(tmpl.data(), 5);
    if (fd < 0) throw SolverIoError(sys_error("cannot create script file in " + dir.string()));
    path_ = tmpl;
    std::size_t off = 0;
    while (off < text.size()) {
      ssize_t n = ::write(fd, text.data() + off, text.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw SolverIoError(sys_error("cannot write script file " + path_));
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempScript() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

std::string substitute(std::string cmd, const std::string& path) {
  const std::string quoted = "'" + path + "'";
  const auto at = cmd.find("{file}");
  if (at == std::string::npos) return cmd + " " + quoted;
  return cmd.replace(at, 6, quoted);
}

std::string first_word(const std::string& s, std::string& rest) {
  std::istringstream in(s);
  std::string w;
  in >> w;
  std::getline(in, rest, '\0');
  return w;
}

SolverOutcome classify(const std::string& out, const std::string& err, int exitCode) {
  SolverOutcome o;
  o.exitCode = exitCode;
  std::string rest;
  const std::string verdict = first_word(out, rest);
  if (verdict == "sat") {
    o.kind = SolverOutcome::Kind::Sat;
    o.model = rest;
  } else if (verdict == "unsat") {
    o.kind = SolverOutcome::Kind::NoModelAtBound;
  } else if (verdict == "unknown") {
    o.kind = SolverOutcome::Kind::Unknown;
    o.detail = "solver answered unknown";
  } else {
    o.kind = SolverOutcome::Kind::SolverError;
    std::string text = err.empty() ? out : err;
    o.detail = text.substr(0, 2000);
    if (o.detail.empty()) o.detail = "no verdict, exit code " + std::to_string(exitCode);
  }
  return o;
}

} // namespace

SolverOutcome run_solver(const std::string& script, const SolverConfig& cfg) {
  if (!(cfg.timeoutSeconds > 0)) throw SolverIoError("solver timeout must be positive");
  TempScript file(script);
  const std::string cmd = substitute(cfg.command, file.path());

  int outPipe[2], errPipe[2];
  if (pipe2(outPipe, O_CLOEXEC) != 0) throw SolverIoError(sys_error("pipe"));
  if (pipe2(errPipe, O_CLOEXEC) != 0) {
    ::close(outPipe[0]), ::close(outPipe[1]);
    throw SolverIoError(sys_error("pipe"));
  }
  const auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {outPipe[0], outPipe[1], errPipe[0], errPipe[1]}) ::close(fd);
    throw SolverIoError(sys_error("fork"));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(outPipe[1], STDOUT_FILENO);
    dup2(errPipe[1], STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    if (!cfg.workdir.empty() && chdir(cfg.workdir.c_str()) != 0) _exit(127);
    execl("/bin/sh", "sh", "-c", ("exec " + cmd).c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  ::close(outPipe[1]);
  ::close(errPipe[1]);

  std::string out, err;
  bool timedOut = false;
  const auto deadline = start + std::chrono::duration<double>(cfg.timeoutSeconds);
  pollfd fds[2] = {{outPipe[0], POLLIN, 0}, {errPipe[0], POLLIN, 0}};
  int open = 2;
  char buf[65536];
  while (open > 0) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timedOut = true;
      break;
    }
    int r = poll(fds, 2, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (r < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int j = 0; j < 2; ++j) {
      if (fds[j].fd < 0 || !(fds[j].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t n = ::read(fds[j].fd, buf, sizeof buf);
      if (n > 0) {
        (j == 0 ? out : err).append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        ::close(fds[j].fd);
        fds[j].fd = -1;
        --open;
      }
    }
  }
  for (auto& f : fds)
    if (f.fd >= 0) ::close(f.fd);
  int status = 0;
  for (;;) {
    if (timedOut) kill(-pid, SIGKILL);
    const pid_t r = waitpid(pid, &status, timedOut ? 0 : WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) break;
    if (r == 0) {
      if (std::chrono::steady_clock::now() >= deadline) timedOut = true;
      else usleep(10000);
    }
  }
  // Reap anything left in the group (the shell execs, so normally nothing).
  kill(-pid, SIGKILL);

  SolverOutcome o;
  if (timedOut) {
    o.kind = SolverOutcome::Kind::TimedOut;
    o.detail = "deadline of " + std::to_string(cfg.timeoutSeconds) + "s exceeded";
  } else {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    o = classify(out, err, code);
    if (o.kind == SolverOutcome::Kind::SolverError && code == 127)
      o.detail = "solver command not runnable: " + cfg.command + (err.empty() ? "" : "\n" + err.substr(0, 2000));
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

SolverOutcome run_solver(const SmtScript& s, const SolverConfig& cfg) { return run_solver(s.text(true), cfg); }

} // namespace mitl
