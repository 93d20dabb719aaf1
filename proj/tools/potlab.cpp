#include "potlab/cli.hpp"

int main(int argc, char** argv) { return potlab::cli::main_entry(argc, argv); }
