#include "koszul/cli.hpp"

int main(int argc, char** argv) { return koszul::cli::run(argc, argv); }
