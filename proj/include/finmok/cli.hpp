#ifndef FINMOK_CLI_HPP
#define FINMOK_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace finmok {

// Runs one CLI invocation; `args` excludes the program name.  Writes the
// JSON result to `out` and diagnostics to `err`.  Exit codes: 64 usage,
// 65 file/parse/input errors, 70 internal errors; `decide`/`class-search`
// report 0 valid, 1 countermodel, 2 unknown.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finmok

#endif
