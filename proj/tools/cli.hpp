// Command-line front end. Exit codes: 0 expectations met (or none apply),
// 1 an expected verdict was not observed, 2 usage error.

#ifndef PLDYN_TOOLS_CLI_HPP_
#define PLDYN_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace pldyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pldyn::cli

#endif  // PLDYN_TOOLS_CLI_HPP_
