#include <iostream>

#include "locreg/cli.hpp"

int main(int argc, char** argv) {
  return locreg::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
