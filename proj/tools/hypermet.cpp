#include <cstdio>

int main() {
  std::puts("hypermet: subcommands not wired up yet");
  return 1;
}
