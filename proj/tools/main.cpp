#include <iostream>

#include "tifem/cli.hpp"

int main(int argc, char** argv) {
  return tifem::run_cli(argc, argv, std::cout, std::cerr);
}
