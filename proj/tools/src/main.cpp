#include "cli.hpp"

int main(int argc, char** argv) { return nepoll::cli_main(argc, argv); }
