#pragma once

namespace ksharp {

/// Arguments of 2F1(a, b; b + 1; z). The third parameter is always b + 1.
struct Hyp2F1Args {
    double a; ///< 0 < a < 1
    double b; ///< b > 0
    double z; ///< 0 <= z <= 1
};

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms). Throws
/// std::domain_error for x <= 0.
double ln_gamma(double x);

/// Gauss hypergeometric function 2F1(a, b; b + 1; z) on the closed interval
/// [0, 1]. Power series for small z, incomplete-beta quadrature
///
///   2F1(a, b; b + 1; z) = b z^{-b} int_0^z t^{b-1} (1 - t)^{-a} dt
///
/// in the interior and Gauss summation at z = 1. Throws std::domain_error
/// outside 0 < a < 1, b > 0, 0 <= z <= 1.
double hyp2f1_b_plus_one(const Hyp2F1Args& args);

namespace hyp2f1_detail {

// Individual evaluation routes, exposed so they can be cross-checked.
double series(double a, double b, double z);
double incomplete_beta_quadrature(double a, double b, double z);
double gauss_sum(double a, double b);

inline constexpr double series_cutoff = 0.25;

} // namespace hyp2f1_detail

} // namespace ksharp
