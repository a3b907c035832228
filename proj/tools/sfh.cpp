#include "subfinsler/cli.hpp"

int main(int argc, char** argv) { return subfinsler::cli::run(argc, argv); }
