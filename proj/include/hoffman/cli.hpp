#ifndef HOFFMAN_CLI_HPP
#define HOFFMAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hoffman::cli {

inline constexpr const char* kToolName = "hoffman";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 success, 2 parse/validation error, 3 infeasible system,
/// 4 size limit, 5 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hoffman::cli

#endif  // HOFFMAN_CLI_HPP
