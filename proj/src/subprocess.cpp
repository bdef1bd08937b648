#include "ctfagent/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "ctfagent/errors.hpp"
#include "ctfagent/util.hpp"

namespace ctfagent {

namespace {

void set_cloexec(int fd) { fcntl(fd, F_SETFD, FD_CLOEXEC); }

struct Pipe {
  int read_fd = -1;
  int write_fd = -1;
  Pipe() {
    int fds[2];
    if (pipe(fds) != 0) throw Error("pipe() failed: " + std::string(strerror(errno)));
    read_fd = fds[0];
    write_fd = fds[1];
  }
  ~Pipe() {
    if (read_fd >= 0) close(read_fd);
    if (write_fd >= 0) close(write_fd);
  }
};

class Stream {
 public:
  Stream(int fd, size_t cap, std::string* sink, bool* truncated)
      : fd_(fd), cap_(cap), sink_(sink), truncated_(truncated) {}

  int fd() const { return fd_; }
  bool open() const { return fd_ >= 0; }

  // Returns false once EOF is reached.
  bool drain() {
    char buf[8192];
    for (;;) {
      ssize_t n = read(fd_, buf, sizeof(buf));
      if (n > 0) {
        size_t room = cap_ > sink_->size() ? cap_ - sink_->size() : 0;
        size_t take = std::min(room, static_cast<size_t>(n));
        sink_->append(buf, take);
        if (take < static_cast<size_t>(n)) *truncated_ = true;
        continue;
      }
      if (n == 0) {
        fd_ = -1;
        return false;
      }
      if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) return true;
      fd_ = -1;
      return false;
    }
  }

 private:
  int fd_;
  size_t cap_;
  std::string* sink_;
  bool* truncated_;
};

}  // namespace

RunResult run_process(const std::vector<std::string>& argv, const RunOptions& opts) {
  if (argv.empty()) throw Error("run_process: empty argv");

  Pipe out_pipe;
  Pipe err_pipe;

  long long start = steady_ms();
  pid_t pid = fork();
  if (pid < 0) throw Error("fork() failed: " + std::string(strerror(errno)));

  if (pid == 0) {
    // Child: own process group so the parent can kill the whole tree.
    setpgid(0, 0);
    dup2(out_pipe.write_fd, STDOUT_FILENO);
    dup2(err_pipe.write_fd, STDERR_FILENO);
    close(out_pipe.read_fd);
    close(out_pipe.write_fd);
    close(err_pipe.read_fd);
    close(err_pipe.write_fd);
    for (const auto& [k, v] : opts.extra_env) setenv(k.c_str(), v.c_str(), 1);
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    const char* msg = "exec failed: ";
    (void)!write(STDERR_FILENO, msg, strlen(msg));
    (void)!write(STDERR_FILENO, args[0], strlen(args[0]));
    _exit(127);
  }

  setpgid(pid, pid);
  close(out_pipe.write_fd);
  out_pipe.write_fd = -1;
  close(err_pipe.write_fd);
  err_pipe.write_fd = -1;
  fcntl(out_pipe.read_fd, F_SETFL, O_NONBLOCK);
  fcntl(err_pipe.read_fd, F_SETFL, O_NONBLOCK);
  set_cloexec(out_pipe.read_fd);
  set_cloexec(err_pipe.read_fd);

  RunResult result;
  Stream out_stream(out_pipe.read_fd, opts.max_output_bytes, &result.out, &result.out_truncated);
  Stream err_stream(err_pipe.read_fd, opts.max_output_bytes, &result.err, &result.err_truncated);

  bool killed = false;
  while (out_stream.open() || err_stream.open()) {
    struct pollfd fds[2];
    nfds_t nfds = 0;
    if (out_stream.open()) fds[nfds++] = {out_stream.fd(), POLLIN, 0};
    if (err_stream.open()) fds[nfds++] = {err_stream.fd(), POLLIN, 0};

    int wait_ms = 200;
    if (opts.timeout_ms) {
      long long remaining = *opts.timeout_ms - (steady_ms() - start);
      if (remaining <= 0 && !killed) {
        kill(-pid, SIGKILL);
        killed = true;
        result.timed_out = true;
      }
      if (remaining > 0 && remaining < wait_ms) wait_ms = static_cast<int>(remaining);
    }

    int rc = poll(fds, nfds, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc > 0) {
      out_stream.drain();
      err_stream.drain();
    }
  }

  int status = 0;
  for (;;) {
    if (opts.timeout_ms && !killed && steady_ms() - start >= *opts.timeout_ms) {
      kill(-pid, SIGKILL);
      killed = true;
      result.timed_out = true;
    }
    pid_t w = waitpid(pid, &status, killed ? 0 : WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) break;
    if (w == 0) usleep(2000);
  }

  result.duration_ms = steady_ms() - start;
  if (result.timed_out) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = -1;
  }
  return result;
}

}  // namespace ctfagent
