#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superlattice::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command (`args` excludes the program name). Data files go to --out;
/// progress lines go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a digest, hex encoded.
std::string fnv1a_hex(const std::string& text);

}  // namespace superlattice::cli
