#pragma once

#include <ostream>

namespace shaclass {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitOther = 1,
    kExitInvalidInput = 2,
    kExitNetwork = 3,
    kExitMissingFixture = 4,
};

/// Entry point of the `shaclass` tool; results go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shaclass
