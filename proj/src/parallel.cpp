#include "isowreath/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <mutex>
#include <string>

namespace isowreath {

int worker_threads()
{
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("ISOWREATH_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0 && cap < n)
            n = static_cast<int>(cap);
    }
    return n < 1 ? 1 : n;
}

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body)
{
    if (exec == Exec::Serial) {
        for (std::size_t k = 0; k < n; ++k)
            body(k);
        return;
    }
    std::exception_ptr first;
    std::size_t first_k = n;
    std::mutex m;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(worker_threads())
    for (long long k = 0; k < count; ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
            std::lock_guard<std::mutex> lock(m);
            if (static_cast<std::size_t>(k) < first_k) {
                first_k = static_cast<std::size_t>(k);
                first = std::current_exception();
            }
        }
    }
    if (first)
        std::rethrow_exception(first);
}

} // namespace isowreath
