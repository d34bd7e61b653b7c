#pragma once

// Runs the seqchain binary (path baked in as SEQCHAIN_CLI) and captures stdout.

#include <sys/wait.h>

#include <cstdio>
#include <string>
#include <vector>

namespace seqchain::cli_test {

struct CliRun {
  std::string out;
  int status = -1;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline CliRun run(const std::vector<std::string>& args) {
  std::string cmd = SEQCHAIN_CLI;
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace seqchain::cli_test
