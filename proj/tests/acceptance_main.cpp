// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "acihs/acceptance.hpp"

int main(int argc, char** argv) {
  acihs::acceptance::Options opt;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "--threads" && i + 1 < argc) opt.threads = std::atoi(argv[++i]);
    else if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failed = 0;
  for (int id = 1; id <= 11; ++id) {
    if (only && id != only) continue;
    const auto r = acihs::acceptance::run(id, opt);
    std::printf("%s\n", acihs::acceptance::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
