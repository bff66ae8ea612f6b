#include <iostream>

#include "gstar/cli.hpp"

int main(int argc, char** argv) {
  return gstar::run(argc, argv, std::cout, std::cerr);
}
