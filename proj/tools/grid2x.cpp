// grid2x: census tools for doubled periodic grid structures.
//
// Subcommands are registered as the corresponding library stages; run
// with --help for the current list.
#include <CLI11.hpp>

#include <cstdio>

#include "grid2x/grid_algebra.hpp"

int main(int argc, char** argv) {
  CLI::App app{"grid2x: exact census tools for doubled periodic grid structures"};
  app.require_subcommand(1);

  auto* version = app.add_subcommand("version", "print tool version");
  version->callback([] { std::puts("grid2x 1.0.0"); });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
