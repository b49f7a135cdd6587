#pragma once

#include <string>

namespace kgsf::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command, capturing stdout. Stderr is discarded unless merged.
RunResult run(const std::string& command, bool merge_stderr = false);

/// Single-quoted for /bin/sh.
std::string quote(const std::string& arg);

}  // namespace kgsf::testing
