#include "wpmix/cli.hpp"

int main(int argc, char** argv) { return wpmix::run_cli(argc, argv); }
