#pragma once
// Batch command-line surface. Every subcommand maps 1:1 to a module
// operation; output is JSON (default), CSV, or pretty text; all counts and
// rationals are serialized as exact decimal strings. Failures carry
// machine-readable codes on stderr and distinct exit statuses:
//   0 ok, 2 usage, 3 budget exceeded, 4 catalogue miss.

#include <iosfwd>
#include <string>
#include <vector>

namespace hallwb {

// args = argv[1..]; output on `out`, structured errors on `err`.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int cli_run(int argc, char** argv);

}  // namespace hallwb
