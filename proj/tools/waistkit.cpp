#include <cstdio>

int main() {
  std::puts("waistkit: subcommands forthcoming");
  return 0;
}
