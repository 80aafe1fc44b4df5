#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitDiagnostics = 2;

struct Environment {
  bool color = false;  // ANSI escapes in reports printed to `out`
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

}  // namespace gopt::cli
