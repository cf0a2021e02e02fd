#pragma once

#include <iosfwd>

namespace vaa {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadConfig = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the vaa_sim tool. Subcommands: run, montecarlo, analyze,
/// scenarios. Returns 0 on success, 1 on bad configuration or input, 2 on a
/// numerical abort.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vaa
