#include "lqcubic/parallel.hpp"

namespace lqcubic {

namespace {
std::atomic<unsigned> configured_threads{1};
}

void set_thread_count(unsigned n) { configured_threads.store(n); }

unsigned thread_count() {
    unsigned n = configured_threads.load();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

} // namespace lqcubic
