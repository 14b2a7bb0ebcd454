#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wardseq {

/// Exit codes: 0 completed, 1 verification FAIL or construction failure,
/// 2 usage / parse error, 3 evaluation error.
enum ExitCode : int { kExitOk = 0, kExitVerifyFail = 1, kExitUsage = 2, kExitEval = 3 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wardseq
