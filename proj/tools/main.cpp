#include "cli.hpp"

int main(int argc, char** argv) { return ggsp::cli::main_entry(argc, argv); }
