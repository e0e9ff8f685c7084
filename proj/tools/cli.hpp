#ifndef DENUM_TOOLS_CLI_HPP
#define DENUM_TOOLS_CLI_HPP

namespace denum::cli {

// Parses argv and executes one subcommand.  Returns the process exit code:
// 0 success, 1 verification disagreement or internal check failure,
// 2 invalid input, 3 method precondition (or size guard) unmet.
int run(int argc, char** argv);

} // namespace denum::cli

#endif // DENUM_TOOLS_CLI_HPP
