#include <iostream>

#include "indisum/pipeline.h"

int main(int argc, char** argv) { return indisum::run_cli(argc, argv, std::cout, std::cerr); }
