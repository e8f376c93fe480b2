#include "xxrelay/cli.hpp"

int main(int argc, char** argv) { return xxrelay::cli_main(argc, argv); }
