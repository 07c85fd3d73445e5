#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lbpx {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitIo = 2,
    kExitMismatch = 3,
};

/// Entry point of the `lbpx` tool. `args` excludes the program name.
/// Results go to --output paths or `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lbpx
