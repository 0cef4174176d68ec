#include "csopt/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace csopt::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Table& resolve() {
    const char* forced = std::getenv("CSOPT_KERNELS");
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return scalar_table();
        if (std::strcmp(forced, "avx2") == 0) {
            const Table* t = avx2_table();
            if (t == nullptr || !avx2_supported()) {
                throw std::runtime_error("CSOPT_KERNELS=avx2 but AVX2 is unavailable");
            }
            return *t;
        }
    }
    const Table* t = avx2_table();
    if (t != nullptr && avx2_supported()) return *t;
    return scalar_table();
}

}  // namespace

const Table& active() {
    static const Table& table = resolve();
    return table;
}

}  // namespace csopt::kernels
