#include "bondle/cli.hpp"

int main(int argc, char** argv) { return bondle::run_cli(argc, argv); }
