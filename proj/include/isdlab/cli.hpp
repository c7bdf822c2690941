#ifndef ISDLAB_CLI_HPP
#define ISDLAB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace isdlab {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int not_found = 2;
inline constexpr int usage = 64;
inline constexpr int io = 73;
}  // namespace exit_code

/// Runs the isdlab command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isdlab

#endif
