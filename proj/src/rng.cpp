#include "bethemix/rng.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace bethemix {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BETHEMIX_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return std::min(n, 256);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

}  // namespace bethemix
