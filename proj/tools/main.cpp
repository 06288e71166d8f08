#include "ineq/cli.hpp"

int main(int argc, char** argv) { return ineq::run_cli(argc, argv); }
