#include "symvoro/parallel.hpp"

#include <cstdlib>
#include <string>

namespace symvoro {

namespace {

int initial_workers() {
    if (const char* env = std::getenv("SYMVORO_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int>& workers() {
    static std::atomic<int> n{initial_workers()};
    return n;
}

}  // namespace

int worker_count() { return workers().load(std::memory_order_relaxed); }

void set_worker_count(int n) { workers().store(n < 1 ? 1 : n, std::memory_order_relaxed); }

}  // namespace symvoro
