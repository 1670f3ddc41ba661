#include "ksharp/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ksharp {

HierarchyParams::HierarchyParams(int n_, int m_) : n(n_), m(m_)
{
    if (n < 1 || m < 1) {
        throw std::invalid_argument("hierarchy exponents must satisfy n >= 1 and m >= 1, got (n, m) = (" +
                                    std::to_string(n) + ", " + std::to_string(m) + ")");
    }
}

double lagrangian_density(double phi_x, double phi_t, double phi_xx, const HierarchyParams& p) noexcept
{
    const double n = p.n;
    const double m = p.m;
    return 0.5 * phi_x * phi_t + ipow(phi_x, p.n + 2) / ((n + 2.0) * (n + 1.0)) - ipow(phi_xx, p.m + 1) / (m + 1.0);
}

double hamiltonian_density(double u, double u_x, const HierarchyParams& p) noexcept
{
    const double n = p.n;
    const double m = p.m;
    return -ipow(u, p.n + 2) / ((n + 2.0) * (n + 1.0)) + ipow(u_x, p.m + 1) / (m + 1.0);
}

DimensionalForm scales_from_coefficients(double epsilon, double delta, const HierarchyParams& p, double vee)
{
    if (!(epsilon > 0.0) || !(delta > 0.0) || !(vee > 0.0)) {
        throw std::invalid_argument("epsilon, delta and V must all be positive");
    }
    DimensionalForm d;
    d.epsilon = epsilon;
    d.delta = delta;
    d.vee = vee;
    // eliminating tau from both definitions leaves ell^{m+1} = (delta/eps) V^{m-1-n}
    const double ell_pow = (delta / epsilon) * std::pow(vee, p.m - 1 - p.n);
    d.ell = std::pow(ell_pow, 1.0 / (p.m + 1));
    d.tau = d.ell / (epsilon * std::pow(vee, p.n));
    return d;
}

Coefficients coefficients_from_scales(const DimensionalForm& d, const HierarchyParams& p)
{
    if (!(d.ell > 0.0) || !(d.tau > 0.0) || !(d.vee > 0.0)) {
        throw std::invalid_argument("length, time and velocity scales must all be positive");
    }
    return {d.ell / (d.tau * std::pow(d.vee, p.n)), std::pow(d.ell, p.m + 2) / (d.tau * std::pow(d.vee, p.m - 1))};
}

} // namespace ksharp
