#include "scs/common.hpp"

#include <cstdlib>

namespace scs {

unsigned worker_count() {
  if (const char* env = std::getenv("SCS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace scs
