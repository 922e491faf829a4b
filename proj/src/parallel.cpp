#include "latticelab/parallel.hpp"

namespace latticelab {

namespace {
std::atomic<std::size_t> g_threads{1};
}

void set_thread_count(std::size_t n) {
  if (n == 0) n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  g_threads = n;
}

std::size_t thread_count() { return g_threads; }

}  // namespace latticelab
