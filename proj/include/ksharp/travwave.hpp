#pragma once

#include "ksharp/model.hpp"

namespace ksharp {

/// Peaked compact traveling wave u(x, t) = U(x - c t) with U(0) = U_max and
/// U = 0 for |xi| >= xi0. Built only through build_peakompacton(), which
/// requires m >= 2.
///
/// Localized waves satisfy the reduced second integral
///
///   (U')^{m+1} = kappa U^2 - gamma U^{n+2},
///   kappa = (m+1) c / (2m),  gamma = (m+1) / ((n+1)(n+2) m),
///
/// whose right-hand side vanishes at U = 0 and U = U_max.
struct Peakompacton {
    HierarchyParams p;
    double c = 0.0;
    double u_max = 0.0;
    double kappa = 0.0;
    double gamma_coef = 0.0;
    double xi0 = 0.0;
};

/// Throws std::invalid_argument for c <= 0 or m < 2.
Peakompacton build_peakompacton(const HierarchyParams& p, double c);

/// Closed form of the implicit solution,
/// ((m+1)/(m-1)) U (kappa U^2)^{-1/(m+1)} 2F1[1/(m+1), b; 1+b; (gamma/kappa) U^n],
/// b = (m-1)/((m+1) n). Equals xi0 at U = U_max.
double implicit_lhs(const Peakompacton& w, double u);

/// Distance |xi| from the crest at which the profile takes the value u,
/// |xi| = xi0 - implicit_lhs(u). Throws std::domain_error unless 0 < u <= U_max.
double xi_of_u(const Peakompacton& w, double u);

/// The pieced, even profile U(xi). Total on the reals.
double profile(const Peakompacton& w, double xi);

/// Closed-form U'' on the open branch 0 < U < U_max. Throws std::domain_error otherwise.
double second_derivative(const Peakompacton& w, double u);

enum class EdgeKind { vanishing, finite, divergent };

struct EdgeBehavior {
    EdgeKind edge;        ///< U'' as U -> 0+
    double edge_value;    ///< limit when edge == finite, else 0
    EdgeKind peak;        ///< U'' as U -> U_max-, divergent for every m >= 2
};

/// Limits of U'' at the support edge and at the crest. Requires m >= 2.
EdgeBehavior edge_behavior(const HierarchyParams& p, double c);

/// (U')^{m+1} - kappa U^2 + gamma U^{n+2}; zero on any localized solution branch.
double ode_residual(const HierarchyParams& p, double c, double u, double u_prime);
double ode_residual(const Peakompacton& w, double u, double u_prime);

/// KdV solitary wave 3c sech^2(sqrt(c) xi / 2), the (n, m) = (1, 1) localized solution.
double kdv_soliton(double c, double xi);

} // namespace ksharp
