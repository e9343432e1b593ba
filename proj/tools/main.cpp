#include <iostream>

#include "cdcr/cli.hpp"

int main(int argc, char** argv) {
  return cdcr::cli::run_cli(argc, argv, std::cout, std::cerr);
}
