#include "cli.hpp"

int main(int argc, char** argv) { return denum::cli::run(argc, argv); }
