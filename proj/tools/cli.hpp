#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gainprophet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

/// Runs one invocation. `args` excludes the program name. The rendered
/// document is written to `out` only after the command has fully succeeded;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gainprophet::cli
