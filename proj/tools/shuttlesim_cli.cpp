#include "shuttlesim/cli.hpp"

int main(int argc, char** argv) { return shuttlesim::cli::main_entry(argc, argv); }
