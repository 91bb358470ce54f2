#ifndef OSMOT_CLI_HPP
#define OSMOT_CLI_HPP

#include <iosfwd>

namespace osmot {

/// Entry point of the `osmot` tool. Returns 0 on success, 1 on mesh parse or
/// validation errors, 2 on bad arguments.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace osmot

#endif  // OSMOT_CLI_HPP
