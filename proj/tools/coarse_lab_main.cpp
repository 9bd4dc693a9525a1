#include "coarse_lab/cli.hpp"

int main(int argc, char** argv) { return coarse_lab::cli::run(argc, argv); }
