#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catmouse::cli {

// One CLI invocation: subcommand plus flags, without the program name.
// Payload goes to out, diagnostics to err. Exit codes: 0 success,
// 1 invariant violation, 2 capacity or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catmouse::cli
