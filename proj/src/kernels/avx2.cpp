// AVX2 variants. Compiled with per-function target attributes so this file
// needs no global -mavx2; callers reach these only through the dispatch
// table after a CPUID check. FMA is deliberately not enabled: each lane
// performs the scalar reference's operations in the same order.

#include "ksharp/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))

#include <immintrin.h>

#include <cmath>
#include <limits>

#define KSHARP_AVX2 __attribute__((target("avx2")))

namespace ksharp::kernels {

namespace {

constexpr std::size_t lanes = 4;

KSHARP_AVX2 inline __m256d abs_pd(__m256d v)
{
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

KSHARP_AVX2 inline __m256d pow_pd(__m256d x, int p, bool signed_even)
{
    if (signed_even && p > 0 && p % 2 == 0) {
        __m256d r = abs_pd(x);
        for (int i = 1; i < p; ++i) r = _mm256_mul_pd(r, x);
        return r;
    }
    __m256d r = _mm256_set1_pd(1.0);
    for (int i = 0; i < p; ++i) r = _mm256_mul_pd(r, x);
    return r;
}

inline double pow_one(double x, int p, bool signed_even)
{
    if (signed_even && p > 0 && p % 2 == 0) {
        double r = std::abs(x);
        for (int i = 1; i < p; ++i) r *= x;
        return r;
    }
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

KSHARP_AVX2 void power(cspan x, int p, bool signed_even, double scale, mspan out)
{
    const std::size_t n = x.size();
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(s, pow_pd(_mm256_loadu_pd(&x[i]), p, signed_even)));
    }
    for (; i < n; ++i) out[i] = scale * pow_one(x[i], p, signed_even);
}

KSHARP_AVX2 void power_mul(cspan x, int p, cspan y, double scale, mspan out)
{
    const std::size_t n = x.size();
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d px = _mm256_mul_pd(s, pow_pd(_mm256_loadu_pd(&x[i]), p, false));
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(px, _mm256_loadu_pd(&y[i])));
    }
    for (; i < n; ++i) out[i] = scale * pow_one(x[i], p, false) * y[i];
}

KSHARP_AVX2 void axpy(double a, cspan x, cspan y, mspan out)
{
    const std::size_t n = x.size();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(&x[i]));
        _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_loadu_pd(&y[i]), ax));
    }
    for (; i < n; ++i) out[i] = y[i] + a * x[i];
}

KSHARP_AVX2 void rk4_combine(cspan u, cspan k1, cspan k2, cspan k3, cspan k4, double w, mspan out)
{
    const std::size_t n = u.size();
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        __m256d acc = _mm256_add_pd(_mm256_loadu_pd(&k1[i]), _mm256_mul_pd(two, _mm256_loadu_pd(&k2[i])));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(two, _mm256_loadu_pd(&k3[i])));
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(&k4[i]));
        _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_loadu_pd(&u[i]), _mm256_mul_pd(vw, acc)));
    }
    for (; i < n; ++i) out[i] = u[i] + w * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i]);
}

inline double fd4_first_at(double xm2, double xm1, double xp1, double xp2, double scale)
{
    return ((xm2 - xp2) + 8.0 * (xp1 - xm1)) * scale;
}

inline double fd4_second_at(double xm2, double xm1, double x0, double xp1, double xp2, double scale)
{
    return ((16.0 * (xm1 + xp1) - (xm2 + xp2)) - 30.0 * x0) * scale;
}

KSHARP_AVX2 void fd4_first(cspan x, double inv_h, mspan out)
{
    const std::size_t n = x.size();
    const double scale = inv_h / 12.0;
    const auto wrap = [&](std::size_t i, std::size_t back) { return x[(i + n - back) % n]; };
    const auto edge = [&](std::size_t i) {
        out[i] = fd4_first_at(wrap(i, 2), wrap(i, 1), x[(i + 1) % n], x[(i + 2) % n], scale);
    };
    if (n < 8) {
        for (std::size_t i = 0; i < n; ++i) edge(i);
        return;
    }
    edge(0);
    edge(1);
    const __m256d eight = _mm256_set1_pd(8.0);
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 2;
    for (; i + lanes + 2 <= n; i += lanes) {
        const __m256d xm2 = _mm256_loadu_pd(&x[i - 2]);
        const __m256d xm1 = _mm256_loadu_pd(&x[i - 1]);
        const __m256d xp1 = _mm256_loadu_pd(&x[i + 1]);
        const __m256d xp2 = _mm256_loadu_pd(&x[i + 2]);
        const __m256d d = _mm256_add_pd(_mm256_sub_pd(xm2, xp2), _mm256_mul_pd(eight, _mm256_sub_pd(xp1, xm1)));
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(d, vs));
    }
    for (; i < n; ++i) edge(i);
}

KSHARP_AVX2 void fd4_second(cspan x, double inv_h2, mspan out)
{
    const std::size_t n = x.size();
    const double scale = inv_h2 / 12.0;
    const auto edge = [&](std::size_t i) {
        out[i] = fd4_second_at(x[(i + n - 2) % n], x[(i + n - 1) % n], x[i], x[(i + 1) % n], x[(i + 2) % n], scale);
    };
    if (n < 8) {
        for (std::size_t i = 0; i < n; ++i) edge(i);
        return;
    }
    edge(0);
    edge(1);
    const __m256d sixteen = _mm256_set1_pd(16.0);
    const __m256d thirty = _mm256_set1_pd(30.0);
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 2;
    for (; i + lanes + 2 <= n; i += lanes) {
        const __m256d xm2 = _mm256_loadu_pd(&x[i - 2]);
        const __m256d xm1 = _mm256_loadu_pd(&x[i - 1]);
        const __m256d x0 = _mm256_loadu_pd(&x[i]);
        const __m256d xp1 = _mm256_loadu_pd(&x[i + 1]);
        const __m256d xp2 = _mm256_loadu_pd(&x[i + 2]);
        __m256d d = _mm256_sub_pd(_mm256_mul_pd(sixteen, _mm256_add_pd(xm1, xp1)), _mm256_add_pd(xm2, xp2));
        d = _mm256_sub_pd(d, _mm256_mul_pd(thirty, x0));
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(d, vs));
    }
    for (; i < n; ++i) edge(i);
}

KSHARP_AVX2 inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

KSHARP_AVX2 double sum_power(cspan x, int p)
{
    const std::size_t n = x.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 * lanes <= n; i += 2 * lanes) {
        acc0 = _mm256_add_pd(acc0, pow_pd(_mm256_loadu_pd(&x[i]), p, false));
        acc1 = _mm256_add_pd(acc1, pow_pd(_mm256_loadu_pd(&x[i + lanes]), p, false));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += pow_one(x[i], p, false);
    return s;
}

KSHARP_AVX2 double max_abs(cspan x)
{
    const std::size_t n = x.size();
    __m256d m = _mm256_setzero_pd();
    __m256d nan_mask = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d v = _mm256_loadu_pd(&x[i]);
        nan_mask = _mm256_or_pd(nan_mask, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, abs_pd(v));
    }
    if (_mm256_movemask_pd(nan_mask) != 0) return std::numeric_limits<double>::quiet_NaN();
    alignas(32) double buf[lanes];
    _mm256_store_pd(buf, m);
    double r = std::max(std::max(buf[0], buf[1]), std::max(buf[2], buf[3]));
    for (; i < n; ++i) {
        if (std::isnan(x[i])) return std::numeric_limits<double>::quiet_NaN();
        r = std::max(r, std::abs(x[i]));
    }
    return r;
}

KSHARP_AVX2 bool all_finite(cspan x)
{
    const std::size_t n = x.size();
    const __m256d zero = _mm256_setzero_pd();
    __m256d ok = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d v = _mm256_loadu_pd(&x[i]);
        // v - v is 0 for finite v and NaN for +-inf or NaN.
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(_mm256_sub_pd(v, v), zero, _CMP_EQ_OQ));
    }
    if (_mm256_movemask_pd(ok) != 0xF) return false;
    for (; i < n; ++i) {
        if (!std::isfinite(x[i])) return false;
    }
    return true;
}

constexpr KernelTable table{"avx2",     power,      power_mul, axpy,    rk4_combine,
                            fd4_first, fd4_second, sum_power, max_abs, all_finite};

} // namespace

const KernelTable* avx2_table() noexcept { return &table; }

} // namespace ksharp::kernels

#else

namespace ksharp::kernels {
const KernelTable* avx2_table() noexcept { return nullptr; }
} // namespace ksharp::kernels

#endif
