#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end.  run() is callable in-process so tests can drive
// the full pipeline without spawning; exit codes are 0 (success), 2
// (validation or usage errors), 3 (numerical failures).

namespace subfinsler::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace subfinsler::cli
