#include "somor/parallel.hpp"

#include <cstdlib>
#include <string>

namespace somor {

int default_workers() {
  if (const char* env = std::getenv("SOMOR_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace somor
