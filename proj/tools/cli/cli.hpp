#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace selbias::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitVerificationFailure = 3;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0, 2 or 3 and nothing else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Subcommands on an already-merged configuration. Each throws InputError
// (or ParameterError) for bad input and returns the exit status otherwise.
int cmd_bound(const AnalysisConfig& config, std::ostream& out);
int cmd_adjust(const AnalysisConfig& config, std::ostream& out);
int cmd_svalue(const AnalysisConfig& config, std::ostream& out);
int cmd_table(const AnalysisConfig& config, std::ostream& out);
int cmd_verify(const AnalysisConfig& config, std::ostream& out);

}  // namespace selbias::cli
