#include "polaritonkit/cli.hpp"

int main(int argc, char** argv) { return polaritonkit::cli::run(argc, argv); }
