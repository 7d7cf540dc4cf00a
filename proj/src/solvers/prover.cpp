#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "floc/solvers.hpp"

extern char** environ;

namespace floc::solvers {

namespace {

std::vector<std::string> split_command(const std::string& command) {
  std::istringstream is(command);
  std::vector<std::string> argv;
  for (std::string word; is >> word;) argv.push_back(word);
  return argv;
}

// Deletes the script file when the decision finishes, however it finishes.
class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    const char* dir = std::getenv("TMPDIR");
    path_ = std::string(dir && *dir ? dir : "/tmp") + "/floc-XXXXXX.smt2";
    int fd = mkstemps(path_.data(), 5);
    if (fd < 0) throw ProverLaunchFailure("cannot create script file: " + std::string(std::strerror(errno)));
    std::size_t off = 0;
    while (off < contents.size()) {
      ssize_t n = ::write(fd, contents.data() + off, contents.size() - off);
      if (n <= 0) {
        ::close(fd);
        ::unlink(path_.c_str());
        throw ProverLaunchFailure("cannot write script file");
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string first_line(const std::string& out) {
  std::istringstream is(out);
  for (std::string line; std::getline(is, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
  }
  return {};
}

}  // namespace

logic::Verdict run_prover(const std::string& command, const std::string& script, double timeout_sec) {
  auto argv_words = split_command(command);
  if (argv_words.empty()) throw ProverLaunchFailure("no prover command configured");
  TempFile file(script);
  argv_words.push_back(file.path());

  std::vector<char*> argv;
  for (auto& w : argv_words) argv.push_back(w.data());
  argv.push_back(nullptr);

  int pipefd[2];
  if (::pipe(pipefd) != 0) throw ProverLaunchFailure("pipe: " + std::string(std::strerror(errno)));

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, pipefd[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, pipefd[0]);
  posix_spawn_file_actions_addclose(&actions, pipefd[1]);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);

  pid_t pid = 0;
  int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(pipefd[1]);
  if (rc != 0) {
    ::close(pipefd[0]);
    throw ProverLaunchFailure("cannot start '" + argv_words[0] + "': " + std::strerror(rc));
  }

  std::string output;
  bool timed_out = false;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_sec);
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{pipefd[0], POLLIN, 0};
    int pr = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (pr < 0 && errno == EINTR) continue;
    if (pr == 0) {
      timed_out = true;
      break;
    }
    ssize_t n = ::read(pipefd[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipefd[0]);
  if (timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }

  if (timed_out) return logic::Verdict::unknown(logic::UnknownReason::Timeout, "prover exceeded the time limit");
  const std::string answer = first_line(output);
  if (answer == "unsat") return logic::Verdict::valid();
  if (answer == "sat") return logic::Verdict::invalid();
  if (answer == "unknown") return logic::Verdict::unknown(logic::UnknownReason::ProverUnknown, "prover said unknown");
  if (WIFSIGNALED(status))
    return logic::Verdict::unknown(logic::UnknownReason::Crash,
                                   "prover killed by signal " + std::to_string(WTERMSIG(status)));
  if (answer.empty() && WIFEXITED(status) && WEXITSTATUS(status) != 0)
    return logic::Verdict::unknown(logic::UnknownReason::Crash,
                                   "prover exited with status " + std::to_string(WEXITSTATUS(status)));
  throw MalformedProverOutput("unexpected prover output: '" + answer + "'");
}

}  // namespace floc::solvers
