#pragma once

#include <iosfwd>

namespace oscnet {

// Subcommands: analyze, simulate, echo, sweep.
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscnet
