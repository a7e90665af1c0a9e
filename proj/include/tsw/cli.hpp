#pragma once

#include <ostream>

namespace tsw {

/// Process exit codes of the `tsw` tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitValidation = 3,
    kExitDomain = 4,  // overtwist, fully wound string, singular twist command
    kExitConvergence = 5,
    kExitIo = 6,
};

/// Entry point of the `tsw` tool: simulate | sweep | force | ratio.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace tsw
