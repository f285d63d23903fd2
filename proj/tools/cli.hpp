#pragma once

#include <ostream>

namespace cix::cli {

// Exit codes: 0 ok, 1 computation error (JSON error object on out), 2 usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cix::cli
