#pragma once

#include <ostream>

namespace morita::cli {

// Exit codes: 0 verified, 1 verification failure, 2 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morita::cli
