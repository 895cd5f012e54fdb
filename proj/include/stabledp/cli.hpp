#pragma once

#include <ostream>

namespace stabledp {

// Exit codes: 0 success, 2 parse or validation error, 3 size cap exceeded.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stabledp
