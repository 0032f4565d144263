#include "hallwb/cli.hpp"

int main(int argc, char** argv) { return hallwb::cli_run(argc, argv); }
