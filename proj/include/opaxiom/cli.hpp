#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opaxiom::cli {

/// Exit statuses.
enum Status : int {
    kOk = 0,
    kParseFailure = 1,
    kDomainFailure = 2,
    /// Convergence, precision, resource and ambiguity failures.
    kNumericFailure = 3,
    kSelftestFailure = 4,
};

/// Runs one command line (without the program name) against the given
/// streams and returns the exit status. `interactive` turns on the REPL prompt.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive = false);

}  // namespace opaxiom::cli
