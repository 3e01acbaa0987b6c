#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzz {

// Entry point shared by the binary and the CLI tests.  `args` excludes the
// program name; streams are injectable so tests can drive stdin and capture
// stdout/stderr.  Returns the process exit code: 0 success, 1 validation or
// expectation failure, 2 usage error.
int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out,
            std::ostream& err);

// Convenience wrapper used by the test suite: feeds `input` as stdin and
// returns the exit code with captured stdout/stderr.
struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli_capture(const std::vector<std::string>& args,
                          const std::string& input = "");

}  // namespace fuzz
