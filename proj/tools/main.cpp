#include "leafpower/cli.hpp"

int main(int argc, char** argv) { return leafpower::cli::run(argc, argv); }
