#include "domreg/cli.hpp"

int main(int argc, char** argv) { return domreg::cli::run(argc, argv); }
