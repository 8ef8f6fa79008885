#include "hkll/cli.hpp"

int main(int argc, char** argv) { return hkll::run_cli(argc, argv); }
