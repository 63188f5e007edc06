#pragma once

#include <ostream>

namespace hecke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

// Runs one subcommand. Results go to `out` (or --out), diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hecke::cli
