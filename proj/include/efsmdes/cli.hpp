#ifndef EFSMDES_CLI_HPP
#define EFSMDES_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace efsmdes {

/// Runs one CLI invocation. `args` excludes the program name.
/// Returns 0 on success (or an "equivalent" verdict), 1 on counterexamples
/// and validation failures, 2 on usage errors.
int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace efsmdes

#endif  // EFSMDES_CLI_HPP
