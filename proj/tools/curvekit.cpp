#include <iostream>

#include "curvekit/cli.hpp"

int main(int argc, char** argv) {
  return curvekit::cli::main_entry(argc, argv, std::cout, std::cerr);
}
