#include <iostream>

#include "relalg/cli.hpp"

int main(int argc, char** argv) {
  return relalg::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
