#include "bilin/cli.hpp"

int main(int argc, char** argv) { return bilin::cli::run(argc, argv); }
