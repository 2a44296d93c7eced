#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rhi::cli {

enum ExitCode : int { ok = 0, failure = 1, strict_warning = 2 };

/// Runs the command line (args excludes the program name), writing to out and err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rhi::cli
