#ifndef SATO_CLI_HPP
#define SATO_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sato {

/// Runs one command line (without the program name). Text goes to `out`;
/// failures print "<category>: <message>" to `err` and return nonzero.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sato

#endif  // SATO_CLI_HPP
