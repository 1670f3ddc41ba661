#include "ksharp/travwave.hpp"

#include "ksharp/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ksharp {

namespace {

double nth_root(double x, int n)
{
    switch (n) {
    case 1: return x;
    case 2: return std::sqrt(x);
    case 3: return std::cbrt(x);
    default: return std::pow(x, 1.0 / n);
    }
}

// Below this offset from the crest the profile is pinned to U_max.
constexpr double crest_band = 1e-10;
constexpr double bisection_tol = 1e-12;

} // namespace

Peakompacton build_peakompacton(const HierarchyParams& p, double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("wave speed c must be positive and finite");
    if (p.m < 2) {
        throw std::invalid_argument("compact peaked waves exist only for m >= 2; use kdv_soliton for m = 1");
    }
    const double n = p.n;
    const double m = p.m;
    Peakompacton w;
    w.p = p;
    w.c = c;
    w.u_max = nth_root((n + 1.0) * (n + 2.0) * c / 2.0, p.n);
    w.kappa = (m + 1.0) * c / (2.0 * m);
    w.gamma_coef = (m + 1.0) / ((n + 1.0) * (n + 2.0) * m);
    w.xi0 = implicit_lhs(w, w.u_max);
    return w;
}

double implicit_lhs(const Peakompacton& w, double u)
{
    const double m = w.p.m;
    const double b = (m - 1.0) / ((m + 1.0) * w.p.n);
    // gamma/kappa * U_max^n is 1 in exact arithmetic; clamp round-off at the crest.
    const double z = std::clamp(w.gamma_coef / w.kappa * ipow(u, w.p.n), 0.0, 1.0);
    const double hyp = hyp2f1_b_plus_one({1.0 / (m + 1.0), b, u >= w.u_max ? 1.0 : z});
    return (m + 1.0) / (m - 1.0) * u * std::pow(w.kappa * u * u, -1.0 / (m + 1.0)) * hyp;
}

double xi_of_u(const Peakompacton& w, double u)
{
    if (!(u > 0.0 && u <= w.u_max)) throw std::domain_error("xi_of_u requires 0 < U <= U_max");
    if (u == w.u_max) return 0.0;
    return w.xi0 - implicit_lhs(w, u);
}

double profile(const Peakompacton& w, double xi)
{
    const double s = std::abs(xi);
    if (!(s < w.xi0)) return 0.0;
    if (s < crest_band) return w.u_max;
    // |xi| -> U is strictly decreasing; keep xi_of_u(lo) >= s >= xi_of_u(hi).
    double lo = 0.0;
    double hi = w.u_max;
    for (int it = 0; it < 200 && hi - lo > bisection_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (xi_of_u(w, mid) > s) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double second_derivative(const Peakompacton& w, double u)
{
    if (!(u > 0.0 && u < w.u_max)) throw std::domain_error("second_derivative requires 0 < U < U_max");
    const double n = w.p.n;
    const double m = w.p.m;
    const double un = ipow(u, w.p.n);
    const double umax_n = ipow(w.u_max, w.p.n);
    return std::pow(u, -(m - 3.0) / (m + 1.0)) * std::pow(umax_n - un, -(m - 1.0) / (m + 1.0)) *
           (w.c * (n + 1.0) - un) * std::pow(umax_n, -2.0 / (m + 1.0)) *
           std::pow(w.kappa, -(m - 1.0) / (m + 1.0)) * (n + 2.0) * w.c / (2.0 * m);
}

EdgeBehavior edge_behavior(const HierarchyParams& p, double c)
{
    if (p.m < 2) throw std::invalid_argument("edge classification requires m >= 2");
    EdgeBehavior out{EdgeKind::vanishing, 0.0, EdgeKind::divergent};
    if (p.m == 3) {
        out.edge = EdgeKind::finite;
        out.edge_value = std::sqrt(c / 6.0);
    } else if (p.m > 3) {
        out.edge = EdgeKind::divergent;
    }
    return out;
}

double ode_residual(const HierarchyParams& p, double c, double u, double u_prime)
{
    const double n = p.n;
    const double m = p.m;
    const double kappa = (m + 1.0) * c / (2.0 * m);
    const double gamma = (m + 1.0) / ((n + 1.0) * (n + 2.0) * m);
    return ipow(u_prime, p.m + 1) - kappa * u * u + gamma * ipow(u, p.n + 2);
}

double ode_residual(const Peakompacton& w, double u, double u_prime)
{
    return ipow(u_prime, w.p.m + 1) - w.kappa * u * u + w.gamma_coef * ipow(u, w.p.n + 2);
}

double kdv_soliton(double c, double xi)
{
    if (!(c > 0.0)) throw std::invalid_argument("kdv_soliton requires c > 0");
    const double s = 1.0 / std::cosh(0.5 * std::sqrt(c) * xi);
    return 3.0 * c * s * s;
}

} // namespace ksharp
