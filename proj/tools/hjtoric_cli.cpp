#include "hjtoric/cli.hpp"

int main(int argc, char** argv) { return hjtoric::run_cli(argc, argv); }
