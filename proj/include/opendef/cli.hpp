#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opendef {

// Runs one command-line invocation; args exclude the program name.  Normal
// results go to out, diagnostics to err.  Returns 0 on success, 2 for usage,
// parse, or input errors, 3 when a work budget is exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opendef
