// Command-line entry point. Subcommands are wired up in cli.hpp; this file
// only forwards argv.

#include <cstdio>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::puts("toricva: no subcommands wired yet");
  return 1;
}
