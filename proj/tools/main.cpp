#include <iostream>
#include <string>
#include <vector>

#include "hapaxprior/cli.hpp"

int main(int argc, char** argv) {
  return hapaxprior::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
