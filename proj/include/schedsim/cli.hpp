#ifndef SCHEDSIM_CLI_HPP
#define SCHEDSIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace schedsim::cli {

/// Exit codes: 0 success, 1 reproduction mismatch or internal invariant
/// failure, 2 bad input (usage, parse or validation errors).
inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_bad_input = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace schedsim::cli

#endif // SCHEDSIM_CLI_HPP
