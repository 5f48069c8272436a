#include "cli/commands.hpp"

int main(int argc, char** argv) { return commexp::cli::run_cli(argc, argv); }
