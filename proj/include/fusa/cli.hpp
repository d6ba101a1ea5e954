#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fusa {

/// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs `<tool> <subcommand> <model-file> [flags]`. `args[0]` is the program name.
///
/// Returns 0 on pass (or pass_with_warnings without --strict), 1 on fail, 2 on a usage or
/// load error. The report goes to `out` unless --out names a file; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusa
