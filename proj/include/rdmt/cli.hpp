#ifndef RDMT_CLI_HPP_
#define RDMT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace rdmt {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

// Runs the command line tool on `args` (without the program name).
// Regular output goes to `out` unless --out/--report name a file; the run
// record and diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rdmt

#endif  // RDMT_CLI_HPP_
