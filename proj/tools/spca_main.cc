#include <iostream>

#include "spca/cli.h"

int main(int argc, char** argv) {
  return spca::cli::main(argc, argv, std::cout, std::cerr);
}
