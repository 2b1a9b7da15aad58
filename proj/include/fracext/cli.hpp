#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracext {

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitDomain = 3 };

// args excludes the program name. Output files named by --out are written
// directly; everything else goes to out / err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracext
