/// @file immgeo_main.cpp
/// @brief Entry point: forwards the argument vector to the CLI front end.

#include <iostream>
#include <string>
#include <vector>

#include "immgeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return immgeo::run_cli(args, std::cout, std::cerr);
}
