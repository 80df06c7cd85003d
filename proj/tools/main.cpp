#include <iostream>

#include "seqwit/cli.hpp"

int main(int argc, char** argv) {
  return seqwit::run_cli(argc, argv, std::cout, std::cerr);
}
