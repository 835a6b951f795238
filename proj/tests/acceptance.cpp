// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--threads N] [id ...]     (no ids: all criteria)

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "supercasimir/validation/acceptance.hpp"

int main(int argc, char** argv) {
  namespace v = supercasimir::validation;
  unsigned threads = 0;
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) {
      threads = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
    } else {
      ids.push_back(arg);
    }
  }
  const auto all = v::criteria();
  for (const auto& id : ids) {
    bool known = false;
    for (const auto& c : all) known = known || c.id == id;
    if (!known) {
      std::fprintf(stderr, "error: unknown criterion '%s'\n", id.c_str());
      return 2;
    }
  }
  int failed = 0;
  v::run(ids, threads, [&](const v::Report& r) {
    std::printf("%s %s (%.1f s): %s\n    %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.seconds,
                r.title.c_str(), r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  return failed ? 1 : 0;
}
