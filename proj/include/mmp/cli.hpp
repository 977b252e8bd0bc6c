#ifndef MMP_CLI_HPP
#define MMP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mmp::cli {

/// Exit codes of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kInfeasible = 2;

/// Runs one invocation. `args` excludes the program name. Input paths equal
/// to "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace mmp::cli

#endif  // MMP_CLI_HPP
