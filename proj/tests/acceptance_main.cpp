// Acceptance suite. With no arguments runs every item; with item numbers
// runs those. One PASS/FAIL line per item; exit status 1 if any failed.

#include <cstdlib>
#include <iostream>
#include <string>

#include "sepdetect/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = sepdetect::acceptance;
  bool ok = true;
  auto run = [&](int id) {
    const auto r = acc::run(id);
    acc::print(std::cout, r);
    ok = ok && r.passed;
  };
  if (argc == 1) {
    for (int id = 1; id <= static_cast<int>(acc::items().size()); ++id) run(id);
  } else {
    for (int i = 1; i < argc; ++i) run(std::atoi(argv[i]));
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
