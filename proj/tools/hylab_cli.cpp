#include "hylab/cli.hpp"

int main(int argc, char** argv) { return hylab::cli::run_cli(argc, argv); }
