#pragma once

#include <ostream>

namespace avc::cli {

// Exit codes: 0 success, 1 validation or analysis findings, 2 I/O, usage
// or parse failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace avc::cli
