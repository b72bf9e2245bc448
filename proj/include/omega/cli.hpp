#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omega::cli {

// Exit statuses of the command-line front end.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_partial = 3;

// Runs one invocation. args excludes the program name. Output goes to `out`,
// diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses a count such as "100000", "1e7" or "10^8".
unsigned long long parse_count(const std::string& text);

} // namespace omega::cli
