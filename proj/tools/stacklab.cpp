#include "stacklab/cli.hpp"

int main(int argc, char** argv) { return stacklab::cli::run(argc, argv); }
