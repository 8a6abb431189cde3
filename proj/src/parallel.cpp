#include "polaritonkit/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace polaritonkit {

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POLARITONKIT_THREADS")) {
        unsigned cap = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
        if (ec == std::errc{} && *ptr == '\0' && cap > 0) n = std::min(n, cap);
    }
    return n;
}

}  // namespace polaritonkit
