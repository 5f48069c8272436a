#pragma once

namespace commexp::cli {

/// Parses argv and runs one subcommand. Exit codes:
///   0  success / verdict "consistent"
///   2  usage, parse, or input contract errors
///   3  numerical failure (non-convergence, overflow, oracle refusal)
///   4  verdict "hypothesis-violated"
///   5  verdict "VIOLATION" (forensic matrix dumps are written)
int run_cli(int argc, const char* const* argv);

}  // namespace commexp::cli
