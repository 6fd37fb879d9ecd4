#ifndef NILMOD_CLI_HPP
#define NILMOD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nilmod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one subcommand. `args` excludes the program name. JSON results and
/// machine-readable errors go to `out`, human diagnostics to `err`; the
/// return value is the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nilmod::cli

#endif  // NILMOD_CLI_HPP
