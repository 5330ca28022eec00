#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volx::cli {

inline constexpr const char* kToolVersion = "volx 0.1.0";

/// Runs the command line given as an argument vector (without argv[0]).
/// Reports go to `out` (or the --output file), diagnostics to `err`.
/// Exit code: 0 when every emitted check passed, 1 when one failed,
/// 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace volx::cli
