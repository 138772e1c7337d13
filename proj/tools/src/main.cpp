#include <iostream>

#include "trimer_cli/commands.hpp"

int main(int argc, char** argv) {
  return trimer::cli::run_cli(argc, argv, std::cout, std::cerr);
}
