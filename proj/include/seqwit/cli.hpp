// Command-line front end for the experiment pipelines.
#pragma once

#include <iosfwd>

namespace seqwit {

// Parses argv and dispatches to a subcommand. Exit codes: 0 success,
// 1 validation error, 2 certification or golden-value failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seqwit
