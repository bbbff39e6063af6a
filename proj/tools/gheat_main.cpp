#include "gheat/cli.hpp"

int main(int argc, char** argv) { return gheat::run_cli(argc, argv); }
