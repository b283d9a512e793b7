#include "visclab/cli.hpp"

int main(int argc, char** argv) { return visclab::cli_main(argc, argv); }
