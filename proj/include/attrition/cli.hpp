#pragma once

#include <string>
#include <vector>

namespace attrition {

/// Parses and executes one subcommand invocation (args exclude the program
/// name). Returns 0 on success, 2 on usage or configuration errors, 1 when
/// the pipeline itself fails; diagnostics go to stderr.
int run_command(const std::vector<std::string>& args);

}  // namespace attrition
