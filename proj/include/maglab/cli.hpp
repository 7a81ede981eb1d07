#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maglab::cli {

// Exit codes: 0 success, 1 domain error, 2 usage error.
struct CommandResult {
  int exit_code = 0;
  std::optional<std::string> report_path;  // the --json file, when written
  std::string summary;
};

// Runs one command line (without the program name). The human table goes to
// out, diagnostics and usage text to err.
CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:n" (linear) or "a:b:nlog" / "a:b:n:log" (logarithmic), endpoints included.
std::vector<double> parse_scale_grid(const std::string& text);

}  // namespace maglab::cli
