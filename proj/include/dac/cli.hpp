#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dac {

enum ExitCode : int {
  exit_ok = 0,
  exit_bad_config = 2,
  exit_cap_exceeded = 3,
  exit_certificate_failed = 4,
  exit_inconclusive = 5,
};

// Runs one command line (without the program name). Primary output goes to
// `out` or to the file named by --out; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "key = value" lines, '#' comments; each entry becomes "--key" followed by
// the whitespace-separated words of the value.
std::vector<std::string> parse_config(const std::string& text);

}  // namespace dac
