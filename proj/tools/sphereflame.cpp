#include "sphereflame/cli.hpp"

int main(int argc, char** argv) { return sphereflame::run_cli(argc, argv); }
