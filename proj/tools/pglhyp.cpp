#include "pglhyp/cli.hpp"

int main(int argc, char** argv) { return pglhyp::main_entry(argc, argv); }
