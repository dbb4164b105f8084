#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqtree {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotIsomorphic = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInternal = 3;

// Runs one command line (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqtree
