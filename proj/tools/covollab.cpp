#include "covollab/cli.hpp"

int main(int argc, char** argv) { return covollab::cli::main(argc, argv); }
