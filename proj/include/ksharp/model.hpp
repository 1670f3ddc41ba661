#pragma once

// Parametrization of the K#(n,m) hierarchy
//
//   u_t + u^n u_x + [(u_x)^m]_xx = 0
//
// together with its Lagrangian/Hamiltonian densities and the scaling that
// maps the dimensional form u_t + eps u^n u_x + delta [(u_x)^m]_xx = 0 onto
// the canonical one. All canonical quantities are dimensionless.

namespace ksharp {

/// One member of the hierarchy. Both exponents are integers >= 1.
struct HierarchyParams {
    int n = 1; ///< advective exponent
    int m = 1; ///< dispersive exponent

    HierarchyParams() = default;
    HierarchyParams(int n_, int m_);

    friend bool operator==(const HierarchyParams&, const HierarchyParams&) = default;
};

/// Characteristic scales (x -> x/ell, t -> t/tau, u -> u/V) together with the
/// coefficients they produce in the dimensional form.
struct DimensionalForm {
    double epsilon = 1.0;
    double delta = 1.0;
    double ell = 1.0;
    double tau = 1.0;
    double vee = 1.0;
};

struct Coefficients {
    double epsilon;
    double delta;
};

/// Integer power by repeated multiplication; exact sign handling for negative x.
constexpr double ipow(double x, int p) noexcept
{
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

double lagrangian_density(double phi_x, double phi_t, double phi_xx, const HierarchyParams& p) noexcept;

/// Legendre transform of the Lagrangian density, written in terms of u = phi_x.
double hamiltonian_density(double u, double u_x, const HierarchyParams& p) noexcept;

/// Solves ell^{m+1} = (delta/eps) V^{m-1-n}, tau = ell / (eps V^n) for a
/// caller-chosen velocity scale V. Throws std::invalid_argument unless all
/// inputs are positive.
DimensionalForm scales_from_coefficients(double epsilon, double delta, const HierarchyParams& p,
                                         double vee = 1.0);

/// eps = ell / (tau V^n), delta = ell^{m+2} / (tau V^{m-1}).
Coefficients coefficients_from_scales(const DimensionalForm& d, const HierarchyParams& p);

} // namespace ksharp
