#ifndef TCW_CLI_HPP
#define TCW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tcw {

// Command-line front end; returns the process exit code (0 = success/yes,
// 1 = valid "no" answer, 2 = input error).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tcw

#endif
