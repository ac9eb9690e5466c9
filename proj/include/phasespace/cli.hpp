#pragma once

#include <iosfwd>

namespace phasespace::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalGuard = 3;

/// Runs the phasespace command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phasespace::cli
