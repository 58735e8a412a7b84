#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return bohr::cli::main_with_args({argv + 1, argv + argc}, std::cout, std::cerr);
}
