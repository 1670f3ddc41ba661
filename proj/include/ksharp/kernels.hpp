#pragma once

// Data-parallel inner loops of the solver and the diagnostics. Every kernel
// has a scalar reference implementation and, on x86-64, an AVX2 variant; the
// active table is chosen once at runtime from CPUID.
//
// Pointwise and stencil kernels evaluate the same floating-point operations in
// the same order in every variant, so their outputs are bitwise identical.
// Reductions use several partial sums in the vector variants and agree with
// the scalar reference only to rounding.

#include <cstddef>
#include <span>

namespace ksharp::kernels {

using cspan = std::span<const double>;
using mspan = std::span<double>;

struct KernelTable {
    const char* name;

    /// out = scale * x^p (p >= 0). With signed_even set and p even, |x|^{p-1} x is used instead.
    void (*power)(cspan x, int p, bool signed_even, double scale, mspan out);
    /// out = scale * x^p * y
    void (*power_mul)(cspan x, int p, cspan y, double scale, mspan out);
    /// out = y + a * x
    void (*axpy)(double a, cspan x, cspan y, mspan out);
    /// out = u + w * (k1 + 2 k2 + 2 k3 + k4)
    void (*rk4_combine)(cspan u, cspan k1, cspan k2, cspan k3, cspan k4, double w, mspan out);
    /// Periodic fourth-order centered first derivative, scaled by inv_h = 1/h.
    void (*fd4_first)(cspan x, double inv_h, mspan out);
    /// Periodic fourth-order centered second derivative, scaled by inv_h2 = 1/h^2.
    void (*fd4_second)(cspan x, double inv_h2, mspan out);
    /// sum_j x_j^p
    double (*sum_power)(cspan x, int p);
    /// max_j |x_j|; NaN if any entry is NaN.
    double (*max_abs)(cspan x);
    /// true when every entry is finite
    bool (*all_finite)(cspan x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant was not compiled in (non-x86 targets).
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;

/// The table selected for this process: AVX2 when both compiled and supported.
const KernelTable& active() noexcept;

/// Pins active() to the given table; nullptr restores CPU detection. Meant
/// for equivalence testing, not for switching while a computation runs.
void force(const KernelTable* table) noexcept;

} // namespace ksharp::kernels
