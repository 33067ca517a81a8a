#include "galoisforge/cli.hpp"

int main(int argc, char **argv)
{ return galoisforge::cli::main_entry(argc, argv); }
