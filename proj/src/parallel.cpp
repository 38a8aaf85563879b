#include "psd/parallel.hpp"

#include <cstdlib>
#include <string>

namespace psd {

int thread_count()
{
    if (const char* env = std::getenv("PSD_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace psd
