#include "brdg/cli.hpp"

int main(int argc, char** argv) { return brdg::run(argc, argv); }
