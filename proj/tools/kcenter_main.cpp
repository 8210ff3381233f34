#include "kcenter/cli.hpp"

int main(int argc, char** argv) { return kcenter::run_cli(argc, argv); }
