#include "ksharp/kernels.hpp"

#include <cmath>
#include <limits>

namespace ksharp::kernels {

namespace {

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

void power(cspan x, int p, bool signed_even, double scale, mspan out)
{
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * pow_one(x[i], p, signed_even);
}

void power_mul(cspan x, int p, cspan y, double scale, mspan out)
{
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * pow_one(x[i], p, false) * y[i];
}

void axpy(double a, cspan x, cspan y, mspan out)
{
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[i] + a * x[i];
}

void rk4_combine(cspan u, cspan k1, cspan k2, cspan k3, cspan k4, double w, mspan out)
{
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = u[i] + w * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i]);
    }
}

inline double fd4_first_at(double xm2, double xm1, double xp1, double xp2, double inv_h)
{
    return ((xm2 - xp2) + 8.0 * (xp1 - xm1)) * (inv_h / 12.0);
}

inline double fd4_second_at(double xm2, double xm1, double x0, double xp1, double xp2, double inv_h2)
{
    return ((16.0 * (xm1 + xp1) - (xm2 + xp2)) - 30.0 * x0) * (inv_h2 / 12.0);
}

void fd4_first(cspan x, double inv_h, mspan out)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double xm2 = x[(i + n - 2) % n];
        const double xm1 = x[(i + n - 1) % n];
        const double xp1 = x[(i + 1) % n];
        const double xp2 = x[(i + 2) % n];
        out[i] = fd4_first_at(xm2, xm1, xp1, xp2, inv_h);
    }
}

void fd4_second(cspan x, double inv_h2, mspan out)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = fd4_second_at(x[(i + n - 2) % n], x[(i + n - 1) % n], x[i], x[(i + 1) % n], x[(i + 2) % n],
                               inv_h2);
    }
}

double sum_power(cspan x, int p)
{
    double s = 0.0;
    for (double v : x) s += pow_one(v, p, false);
    return s;
}

double max_abs(cspan x)
{
    double m = 0.0;
    for (double v : x) {
        if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool all_finite(cspan x)
{
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

constexpr KernelTable table{"scalar", power,    power_mul, axpy,      rk4_combine,
                            fd4_first, fd4_second, sum_power, max_abs, all_finite};

} // namespace

const KernelTable& scalar_table() noexcept { return table; }

} // namespace ksharp::kernels
