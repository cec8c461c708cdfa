#include <iostream>
#include <string>
#include <vector>

#include "acihs/cli.hpp"

int main(int argc, char** argv) {
  return acihs::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
