#include "sawlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sawlab {

unsigned default_parallelism() {
  if (const char* env = std::getenv("SAWLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace sawlab
