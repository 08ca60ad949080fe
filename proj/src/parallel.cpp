#include "ris/parallel.hpp"

#include <cstdlib>

namespace ris {

unsigned default_thread_count() {
    if (const char* env = std::getenv("RIS_SCATTER_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024)
            return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace ris
