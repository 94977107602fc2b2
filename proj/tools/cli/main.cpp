#include "run.hpp"

int main(int argc, char** argv) { return ospchain::cli::main_entry(argc, argv); }
