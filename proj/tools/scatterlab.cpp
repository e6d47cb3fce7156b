#include <iostream>
#include <string>
#include <vector>

#include "scatterlab/cli.hpp"

int main(int argc, char** argv) {
  return scatterlab::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
