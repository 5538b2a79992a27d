#include "dynet/cli.hpp"

int main(int argc, char** argv) { return dynet::cli::cli_main(argc, argv); }
