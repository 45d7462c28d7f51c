#include "cli/commands.hpp"

int main(int argc, char** argv) { return unmac::cli::run_cli(argc, argv); }
