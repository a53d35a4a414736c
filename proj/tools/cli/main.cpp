#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return assocnorm::cli::execute(argc, argv, std::cout, std::cerr);
}
