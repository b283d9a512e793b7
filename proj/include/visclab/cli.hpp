#pragma once

#include <vector>

namespace visclab {

// Subcommands: solve | study | verify-entropy | selftest.
// Exit codes: 0 all-pass, 1 verdict failure, 2 usage/config error.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<const char*>& argv);

}  // namespace visclab
