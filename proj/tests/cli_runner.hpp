#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace geocenter::testing {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the geocenter binary with the given arguments; stderr is merged into
// the captured text only when `merge_stderr` is set.
inline CliRun run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      std::string("\"") + GEOCENTER_CLI + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string fixture(const std::string& name) {
  return std::string("\"") + GEOCENTER_FIXTURES + "/" + name + "\"";
}

}  // namespace geocenter::testing
