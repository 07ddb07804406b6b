#pragma once

#include <iosfwd>

namespace nepoll {

/// Subcommands sweep, report, generate and check. Returns 0 on success, 1 on a
/// data error and 2 on a usage error; errors print `error: <code>: <message>`.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace nepoll
