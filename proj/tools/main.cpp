#include "limitfrac/cli.hpp"

int main(int argc, char** argv) { return limitfrac::cli_main(argc, argv); }
