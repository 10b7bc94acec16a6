#pragma once

#include <ostream>

namespace ridgeclass {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `ridgeclass` tool: extract, train, classify, evaluate,
/// synth. Every subcommand also accepts `--config FILE` with `key = value`
/// lines named after its long flags.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ridgeclass
