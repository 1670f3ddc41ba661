#include "ksharp/kernels.hpp"

#include <atomic>

namespace ksharp::kernels {

namespace {

std::atomic<const KernelTable*> forced{nullptr};

const KernelTable& detected() noexcept
{
    static const KernelTable& selected = []() -> const KernelTable& {
        const KernelTable* vec = avx2_table();
        if (vec != nullptr && cpu_has_avx2()) return *vec;
        return scalar_table();
    }();
    return selected;
}

} // namespace

bool cpu_has_avx2() noexcept
{
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& active() noexcept
{
    const KernelTable* f = forced.load(std::memory_order_acquire);
    return f != nullptr ? *f : detected();
}

void force(const KernelTable* table) noexcept { forced.store(table, std::memory_order_release); }

} // namespace ksharp::kernels
