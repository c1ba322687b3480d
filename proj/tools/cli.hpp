#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expsums::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitHardFailure = 2;

/// Runs the command line `args` (without the program name). Human output goes
/// to `out`, diagnostics to `err`; report files are written where --out says.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace expsums::cli
