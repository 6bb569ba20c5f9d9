#include "mazeplan/cli.hpp"

int main(int argc, char** argv) { return mazeplan::run_cli(argc, argv); }
