// Writes the synthetic bilingual fixture to a directory, for trying the
// command-line tool on something larger than the running example.
#include <cstdlib>
#include <iostream>
#include <string>

#include "synthetic.h"

int main(int argc, char **argv) {
  if (argc < 2 || argc > 4) {
    std::cerr << "usage: make_synthetic DIR [SENTENCES] [SEED]\n";
    return 2;
  }
  std::size_t sentences = argc > 2 ? std::stoul(argv[2]) : 500;
  std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 20240611;
  auto fx = synthetic::Write(argv[1], sentences, seed);
  std::cout << fx.config.string() << "\n";
  return 0;
}
