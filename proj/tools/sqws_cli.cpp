#include "sqws/cli.hpp"

int main(int argc, char** argv) { return sqws::cli_main(argc, argv); }
