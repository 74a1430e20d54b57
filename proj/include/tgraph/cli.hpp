#pragma once

// Command-line front end. Usage:
//
//   tgraph <subcommand> [--in FILE]... [--out FILE] [--radius N]
//          [--base VERTEX] [--format json|dot]
//
// Exit status 0 on success, 1 on a domain error (reported as
// {"error": kind, "message": text} on the error stream), 2 on a usage error.

#include <ostream>
#include <string>
#include <vector>

namespace tgraph::cli {

/// `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tgraph::cli
