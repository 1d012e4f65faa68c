#ifndef NHMC_CLI_HPP
#define NHMC_CLI_HPP

#include "nhmc/core.hpp"

#include <ostream>

namespace nhmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitInfeasible = 4;

int exit_code_for(ErrorKind kind) noexcept;

/// Entry point of the `nhmc` tool. The JSON summary goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nhmc::cli

#endif  // NHMC_CLI_HPP
