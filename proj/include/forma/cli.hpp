#ifndef FORMA_CLI_HPP
#define FORMA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace forma {

/// Runs one CLI command. Exit code 0 = all requested checks pass, 1 = a check
/// failed (witnesses in the report stream), 2 = input or usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forma

#endif
