#pragma once

#include <ostream>

namespace gammalat::cli {

// Exit codes: 0 success, 1 property violation, 2 input error, 3 cap
// exceeded.  The report goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gammalat::cli
