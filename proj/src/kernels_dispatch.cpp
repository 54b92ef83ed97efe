#include <cstdlib>
#include <cstring>

#include "fanoeit/kernels.hpp"

namespace fanoeit::kernels {

namespace {

struct Selected {
    ChiGridFn fn;
    const char* name;
};

Selected select() {
    const char* want = std::getenv("FANOEIT_KERNEL");
#if defined(__x86_64__) || defined(_M_X64)
    const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (want && std::strcmp(want, "scalar") == 0) return {chi_grid_scalar, "scalar"};
    if (want && std::strcmp(want, "avx2") == 0 && has_avx2) return {chi_grid_avx2, "avx2"};
    if (!want && has_avx2) return {chi_grid_avx2, "avx2"};
#elif defined(__aarch64__)
    if (want && std::strcmp(want, "scalar") == 0) return {chi_grid_scalar, "scalar"};
    if (!want || std::strcmp(want, "neon") == 0) return {chi_grid_neon, "neon"};
#endif
    return {chi_grid_scalar, "scalar"};
}

const Selected& selected() {
    static const Selected s = select();
    return s;
}

}  // namespace

ChiGridFn chi_grid_fn() { return selected().fn; }

const char* chi_grid_impl_name() { return selected().name; }

void chi_grid(const ChiParams& p, std::span<const double> omega1,
              std::span<double> re, std::span<double> im) {
    selected().fn(p, omega1, re, im);
}

}  // namespace fanoeit::kernels
