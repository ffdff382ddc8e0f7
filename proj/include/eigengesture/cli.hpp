#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigengesture::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnknownGesture = 1;  // recognize only
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitTraining = 4;

/// Pixel count above which `bench --direct` refuses to build the full
/// N^2 x N^2 covariance without --force.
inline constexpr std::size_t kDirectBenchGuard = 4096;

/// Run one command (train | recognize | evaluate | bench | inspect) given the
/// arguments after the program name. Never throws; every failure maps to a
/// documented exit code with a message on err.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigengesture::cli
