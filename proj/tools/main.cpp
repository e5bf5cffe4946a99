#include "lcskit/cli.hpp"

int main(int argc, char** argv) { return lcskit::run_cli(argc, argv); }
