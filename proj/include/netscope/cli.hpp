#pragma once

#include <ostream>

namespace netscope::cli {

// Full pipeline behind the `netscope` executable; exposed so tests can drive
// it in-process. Returns the process exit status (0 on success, the
// ErrorCode value of the failing stage otherwise).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netscope::cli
