#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fieldmarket::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// unless `--out` is given; diagnostics go to `err` as a single
/// `error[<kind>]: ...` line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fieldmarket::cli
