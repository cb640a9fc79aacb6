#include "seedpure/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace seedpure {

namespace {

int resolve_thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const char* env = std::getenv("SEEDPURE_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    try {
        const int cap = std::stoi(env);
        if (cap <= 0) return hw;  // 0 = auto
        return cap < hw ? cap : hw;
    } catch (...) {
        return hw;
    }
}

}  // namespace

int thread_count() {
    static const int n = resolve_thread_count();
    return n;
}

}  // namespace seedpure
