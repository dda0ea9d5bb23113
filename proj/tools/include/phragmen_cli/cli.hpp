#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phragmen::cli {

// Entry point of phragmen-lab. Exit codes: 0 success, 1 usage error (bad
// flags, unparsable flag values or config), 2 runtime error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Convenience overload; args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phragmen::cli
