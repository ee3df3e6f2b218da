#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace urnwalk::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitData = 3,
    kExitNumerical = 4,
};

/// Runs one command line. `args` excludes the program name, e.g.
/// {"evolve", "--n", "2", "--kappa", "0.1", "--out", "pmf.csv"}.
///
/// Every command writes `<out>.manifest.json` beside its primary output.
/// `replay --manifest FILE` re-runs the recorded command and checks that all
/// outputs come out byte-identical.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urnwalk::cli
