#include "doctest.h"

#include "ksharp/travwave.hpp"
#include "oracles.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

using namespace ksharp;

namespace {
const double c075 = 0.75;

// Five-point centered slope.
double slope(const Peakompacton& w, double xi, double h)
{
    return (profile(w, xi - 2 * h) - 8 * profile(w, xi - h) + 8 * profile(w, xi + h) - profile(w, xi + 2 * h)) /
           (12 * h);
}
} // namespace

TEST_SUITE("travwave")
{
TEST_CASE("build (1,3) at c = 0.75")
{
    const auto w = build_peakompacton({1, 3}, c075);
    CHECK(w.u_max == 2.25);
    CHECK(w.kappa == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.gamma_coef == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
    CHECK(std::abs(w.xi0 - oracle::xi0_n1_m3) <= 1e-13 * w.xi0);
    const auto ow = oracle::wave(1, 3, c075);
    CHECK(std::abs(w.xi0 - oracle::width_integral(ow, 0.0, ow.u_max)) <= 1e-10 * w.xi0);
}

TEST_CASE("xi0 table against frozen values and the width integral")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            CHECK(std::abs(w.xi0 - oracle::xi0_table[n - 1][m - 2]) <= 1e-12 * w.xi0);
            const auto ow = oracle::wave(n, m, c075);
            CHECK(std::abs(w.xi0 - oracle::width_integral(ow, 0.0, ow.u_max)) <= 1e-8 * w.xi0);
        }
    }
}

TEST_CASE("crest is a root of the second integral")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 6; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            const double scale = w.kappa * w.u_max * w.u_max;
            CHECK(std::abs(scale - w.gamma_coef * std::pow(w.u_max, n + 2)) <= 1e-14 * scale);
            CHECK(std::abs(ode_residual(w, w.u_max, 0.0)) <= 1e-14 * scale);
            CHECK(std::isfinite(w.xi0));
            CHECK(w.xi0 > 0.0);
        }
    }
}

TEST_CASE("build rejects m < 2 and non-positive speed")
{
    CHECK_THROWS_AS(build_peakompacton({1, 1}, c075), std::invalid_argument);
    CHECK_THROWS_AS(build_peakompacton({1, 3}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_peakompacton({1, 3}, -1.0), std::invalid_argument);
}

TEST_CASE("peak height law")
{
    CHECK(std::abs(build_peakompacton({1, 3}, c075).u_max - 2.25) <= 1e-12);
    CHECK(std::abs(build_peakompacton({2, 3}, c075).u_max - std::sqrt(4.5)) <= 1e-12);
    CHECK(std::abs(build_peakompacton({3, 3}, c075).u_max - std::cbrt(7.5)) <= 1e-12);
    for (int n = 1; n <= 3; ++n) {
        const double ref = build_peakompacton({n, 2}, c075).u_max;
        for (int m = 3; m <= 6; ++m) CHECK(build_peakompacton({n, m}, c075).u_max == ref);
    }
}

TEST_CASE("support width depends on both exponents")
{
    std::set<double> widths;
    for (int n = 1; n <= 3; ++n) {
        for (int m = 3; m <= 5; ++m) widths.insert(build_peakompacton({n, m}, c075).xi0);
    }
    CHECK(widths.size() == 9);
}

TEST_CASE("speed changes height and width")
{
    // Rescaling U by U_max gives xi0 ~ c^{(m-1-n)/(n(m+1))}: the width is
    // independent of c exactly when m = n + 1.
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            double prev_u = 0.0;
            const double ref = build_peakompacton({n, m}, 1.0).xi0;
            const double expo = (m - 1.0 - n) / (n * (m + 1.0));
            std::set<double> widths;
            for (double c : {0.25, 0.5, 0.75, 2.0}) {
                const auto w = build_peakompacton({n, m}, c);
                CHECK(w.u_max > prev_u);
                prev_u = w.u_max;
                CHECK(w.xi0 == doctest::Approx(ref * std::pow(c, expo)).epsilon(1e-12));
                widths.insert(w.xi0);
            }
            if (m != n + 1) CHECK(widths.size() == 4);
        }
    }
}

TEST_CASE("xi_of_u endpoints and interior value")
{
    const auto w = build_peakompacton({1, 3}, c075);
    CHECK(xi_of_u(w, w.u_max) == 0.0);
    CHECK(std::abs(xi_of_u(w, 1e-12 * w.u_max) - w.xi0) <= 1e-5);
    const double mid = xi_of_u(w, 0.5 * w.u_max);
    CHECK(std::abs(mid - oracle::abs_xi_half_umax_n1_m3) <= 1e-12);
    const auto ow = oracle::wave(1, 3, c075);
    CHECK(std::abs(mid - oracle::width_integral(ow, 0.5 * ow.u_max, ow.u_max)) <= 1e-8);
    CHECK_THROWS_AS(xi_of_u(w, 0.0), std::domain_error);
    CHECK_THROWS_AS(xi_of_u(w, -1.0), std::domain_error);
    CHECK_THROWS_AS(xi_of_u(w, w.u_max * (1 + 1e-12)), std::domain_error);
}

TEST_CASE("xi_of_u is strictly decreasing")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            double prev = xi_of_u(w, 1e-6 * w.u_max);
            for (int i = 1; i <= 200; ++i) {
                const double cur = xi_of_u(w, w.u_max * i / 200.0);
                CHECK(cur < prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("profile examples")
{
    const auto w = build_peakompacton({1, 3}, c075);
    CHECK(profile(w, 2 * w.xi0) == 0.0);
    CHECK(profile(w, -2 * w.xi0) == 0.0);
    CHECK(profile(w, 0.0) == 2.25);
    const double u_half = profile(w, 0.5 * w.xi0);
    CHECK(std::abs(u_half - oracle::u_at_half_xi0_n1_m3) <= 1e-11);
    // independent check: shoot the ODE in from the support edge
    CHECK(std::abs(u_half - oracle::shoot_profile(oracle::wave(1, 3, c075), 0.5 * w.xi0)) <= 1e-8);
}

TEST_CASE("profile matches ODE shooting across the hierarchy")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            const auto ow = oracle::wave(n, m, c075);
            for (double frac : {0.1, 0.3, 0.6}) {
                const double got = profile(w, w.xi0 * (1.0 - frac));
                CHECK_MESSAGE(std::abs(got - oracle::shoot_profile(ow, frac * w.xi0)) <= 1e-8,
                              "n=" << n << " m=" << m << " frac=" << frac);
            }
        }
    }
}

TEST_CASE("profile is even and inverts xi_of_u")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            for (int i = 0; i <= 60; ++i) {
                const double xi = -1.2 * w.xi0 + 2.4 * w.xi0 * i / 60.0;
                CHECK(profile(w, xi) == profile(w, -xi));
                const double u = profile(w, xi);
                CHECK(u >= 0.0);
                CHECK(u <= w.u_max);
                if (u > 1e-3 && u < w.u_max - 1e-3) CHECK(std::abs(xi_of_u(w, u) - std::abs(xi)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("profile and slope are continuous at the junctions")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            // values
            CHECK(profile(w, w.xi0 * (1 - 1e-12)) <= 1e-5);
            CHECK(w.u_max - profile(w, 1e-9) <= 1e-5);
            // one-sided slope just inside the edge tends to the zero slope outside
            const double h = 1e-11;
            const double inner = (profile(w, w.xi0 - h) - profile(w, w.xi0 - 2 * h)) / h;
            CHECK(std::abs(inner) <= 1e-5);
            // at the crest the one-sided slopes are mirror images and vanish like h^{1/m}
            const double right = [&](double s) { return (profile(w, s) - w.u_max) / s; }(1e-3);
            const double left = (w.u_max - profile(w, -1e-3)) / 1e-3;
            CHECK(right == -left);
            const double right_fine = (profile(w, 1e-4) - w.u_max) / 1e-4;
            CHECK(right / right_fine == doctest::Approx(std::pow(10.0, 1.0 / m)).epsilon(0.05));
        }
    }
}

TEST_CASE("second derivative closed form agrees with the second integral")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            for (int i = 1; i < 20; ++i) {
                const double u = w.u_max * i / 20.0;
                // U'' = F'(U) / ((m+1) F^{(m-1)/(m+1)}) on the rising branch
                const double f = w.kappa * u * u - w.gamma_coef * std::pow(u, n + 2);
                const double fp = 2 * w.kappa * u - (n + 2) * w.gamma_coef * std::pow(u, n + 1);
                const double want = fp / ((m + 1.0) * std::pow(f, (m - 1.0) / (m + 1.0)));
                CHECK(second_derivative(w, u) == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("second derivative at the support edge")
{
    const auto w3 = build_peakompacton({1, 3}, c075);
    const double lim = std::sqrt(c075 / 6.0);
    CHECK(std::abs(second_derivative(w3, 1e-10 * w3.u_max) - lim) <= 1e-8 * lim);
    CHECK(lim == doctest::Approx(std::sqrt(0.125)).epsilon(1e-15));

    const auto w2 = build_peakompacton({1, 2}, c075);
    const double a = second_derivative(w2, 1e-6 * w2.u_max);
    const double b = second_derivative(w2, 1e-12 * w2.u_max);
    CHECK(b < a);
    CHECK(b < 1e-3);

    // m = 5 grows like U^{-1/3}; it is about 1.9e3 at 1e-12 U_max and passes 1e6 further in
    const auto w5 = build_peakompacton({1, 5}, c075);
    const double g1 = second_derivative(w5, 1e-12 * w5.u_max);
    const double g2 = second_derivative(w5, 1e-15 * w5.u_max);
    CHECK(g2 / g1 == doctest::Approx(10.0).epsilon(1e-6));
    CHECK(g1 > 1e3);
    CHECK(second_derivative(w5, 1e-24 * w5.u_max) > 1e6);
}

TEST_CASE("second derivative diverges at the crest")
{
    for (int m = 2; m <= 5; ++m) {
        const auto w = build_peakompacton({1, m}, c075);
        CHECK(std::abs(second_derivative(w, w.u_max * (1 - 1e-12))) > 1e2);
        CHECK(std::abs(second_derivative(w, w.u_max * (1 - 1e-12))) >
              std::abs(second_derivative(w, w.u_max * (1 - 1e-6))));
    }
}

TEST_CASE("second derivative domain")
{
    const auto w = build_peakompacton({1, 3}, c075);
    CHECK_THROWS_AS(second_derivative(w, 0.0), std::domain_error);
    CHECK_THROWS_AS(second_derivative(w, w.u_max), std::domain_error);
}

TEST_CASE("edge classification")
{
    for (int n = 1; n <= 3; ++n) {
        const auto e2 = edge_behavior({n, 2}, c075);
        CHECK(e2.edge == EdgeKind::vanishing);
        const auto e3 = edge_behavior({n, 3}, c075);
        CHECK(e3.edge == EdgeKind::finite);
        CHECK(e3.edge_value == doctest::Approx(std::sqrt(c075 / 6.0)).epsilon(1e-15));
        for (int m = 4; m <= 6; ++m) CHECK(edge_behavior({n, m}, c075).edge == EdgeKind::divergent);
        for (int m = 2; m <= 6; ++m) CHECK(edge_behavior({n, m}, c075).peak == EdgeKind::divergent);
    }
    CHECK_THROWS_AS(edge_behavior({1, 1}, c075), std::invalid_argument);
}

TEST_CASE("ode residual trivial points")
{
    const auto w = build_peakompacton({2, 4}, c075);
    CHECK(ode_residual(w, 0.0, 0.0) == 0.0);
    CHECK(std::abs(ode_residual(w, w.u_max, 0.0)) <= 1e-14 * w.kappa * w.u_max * w.u_max);
}

TEST_CASE("profile satisfies the second integral")
{
    for (int n = 1; n <= 3; ++n) {
        for (int m = 2; m <= 5; ++m) {
            const auto w = build_peakompacton({n, m}, c075);
            const double tol = 1e-6 * std::max(w.kappa * w.u_max * w.u_max, 1.0);
            for (int i = 0; i < 100; ++i) {
                const double xi = -w.xi0 + (i + 0.5) * w.xi0 / 100.0; // rising branch
                const double u = profile(w, xi);
                CHECK(std::abs(ode_residual(w, u, slope(w, xi, 1e-4))) <= tol);
                // the falling branch has U' < 0: fine for odd m, sign-flipped for even m
                const double r = ode_residual(w, u, slope(w, -xi, 1e-4));
                const double f = w.kappa * u * u - w.gamma_coef * std::pow(u, n + 2);
                if (m % 2 == 1) CHECK(std::abs(r) <= tol);
                else CHECK(std::abs(r + 2 * f) <= tol);
            }
        }
    }
}

TEST_CASE("kdv soliton")
{
    CHECK(kdv_soliton(c075, 0.0) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(kdv_soliton(c075, 200.0) < 1e-70);
    CHECK(kdv_soliton(c075, -3.0) == kdv_soliton(c075, 3.0));
    for (int i = 0; i < 100; ++i) {
        const double xi = -15.0 + 0.3 * i;
        const double s = 1.0 / std::cosh(0.5 * std::sqrt(c075) * xi);
        const double up = -3.0 * c075 * std::sqrt(c075) * s * s * std::tanh(0.5 * std::sqrt(c075) * xi);
        CHECK(std::abs(ode_residual({1, 1}, c075, kdv_soliton(c075, xi), up)) <= 1e-10);
    }
    CHECK_THROWS_AS(kdv_soliton(0.0, 1.0), std::invalid_argument);
}
}
