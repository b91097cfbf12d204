#pragma once

#include <iosfwd>

namespace ldwb::cli {

// Exit codes shared by every command.
inline constexpr int kOk = 0;        // Equal / OK
inline constexpr int kFound = 1;     // Distinct / Found / Violation
inline constexpr int kUsage = 2;     // usage or input error
inline constexpr int kUnknown = 3;   // Unknown / not found within bounds

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ldwb::cli
