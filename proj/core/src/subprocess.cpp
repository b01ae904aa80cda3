#include "tuc/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "tuc/errors.hpp"

namespace tuc {

namespace {

void set_nonblocking(int fd) {
  fcntl(fd, F_SETFL, fcntl(fd, F_GETFL, 0) | O_NONBLOCK);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv,
                          std::span<const std::uint8_t> input,
                          double timeout_seconds) {
  if (argv.empty()) throw RegistrationError("empty command");

  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw RegistrationError("pipe() failed: " +
                            std::string(std::strerror(errno)));
  }

  const pid_t pid = fork();
  if (pid < 0) {
    throw RegistrationError("fork() failed: " +
                            std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    // Child: own process group (so a timeout kill reaps grandchildren too),
    // pipes wired to stdio, then exec.
    setsid();
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  set_nonblocking(in_pipe[1]);
  set_nonblocking(out_pipe[0]);

  ProcessResult res;
  const double start = now_seconds();
  const double deadline = start + timeout_seconds;
  std::size_t written = 0;
  bool stdin_open = true;
  bool stdout_open = true;
  if (input.empty()) {
    stdin_open = false;
    close(in_pipe[1]);
  }

  while (stdout_open || stdin_open) {
    const double remaining = deadline - now_seconds();
    if (remaining <= 0.0) {
      res.timed_out = true;
      break;
    }
    pollfd fds[2];
    nfds_t nfds = 0;
    int out_idx = -1, in_idx = -1;
    if (stdout_open) {
      out_idx = int(nfds);
      fds[nfds++] = pollfd{out_pipe[0], POLLIN, 0};
    }
    if (stdin_open) {
      in_idx = int(nfds);
      fds[nfds++] = pollfd{in_pipe[1], POLLOUT, 0};
    }
    const int pr = poll(fds, nfds, int(remaining * 1000) + 1);
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP))) {
      std::uint8_t buf[65536];
      const ssize_t n = read(out_pipe[0], buf, sizeof buf);
      if (n > 0) {
        res.output.insert(res.output.end(), buf, buf + n);
      } else if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) {
        stdout_open = false;
      }
    }
    if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
        // Child closed its stdin (e.g. ignores input); stop feeding.
        stdin_open = false;
        close(in_pipe[1]);
      } else {
        const std::size_t chunk =
            std::min<std::size_t>(65536, input.size() - written);
        const ssize_t n = write(in_pipe[1], input.data() + written, chunk);
        if (n > 0) {
          written += std::size_t(n);
        } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
          stdin_open = false;
          close(in_pipe[1]);
        }
        if (stdin_open && written == input.size()) {
          stdin_open = false;
          close(in_pipe[1]);
        }
      }
    }
  }
  if (stdin_open) close(in_pipe[1]);
  close(out_pipe[0]);

  int status = 0;
  if (res.timed_out) {
    kill(-pid, SIGKILL);
    waitpid(pid, &status, 0);
  } else {
    // Pipes are closed; give the child until the deadline to exit.
    for (;;) {
      const pid_t w = waitpid(pid, &status, WNOHANG);
      if (w == pid) break;
      if (now_seconds() >= deadline) {
        res.timed_out = true;
        kill(-pid, SIGKILL);
        waitpid(pid, &status, 0);
        break;
      }
      usleep(1000);
    }
  }
  res.elapsed_seconds = now_seconds() - start;
  if (WIFEXITED(status)) {
    res.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    res.exit_code = 128 + WTERMSIG(status);
  }
  return res;
}

}  // namespace tuc
