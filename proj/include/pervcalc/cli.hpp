#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pervcalc::cli {

enum ExitCode { ExitSuccess = 0, ExitViolation = 1, ExitUsage = 2 };

/// Runs one command. `args` excludes the program name; `env_seed` is the
/// value of PERVCALC_SEED, if set. Reports go to `out` (or the --out file),
/// diagnostics to `err` as a single line.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace pervcalc::cli
