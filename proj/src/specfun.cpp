#include "ksharp/specfun.hpp"

#include "ksharp/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ksharp {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for x >= 0.5.
double ln_gamma_lanczos(double x)
{
    const double z = x - 1.0;
    double series = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i) series += lanczos_coef[i] / (z + static_cast<double>(i));
    const double t = z + lanczos_g + 0.5;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

void check_args(const Hyp2F1Args& args)
{
    if (!(args.a > 0.0 && args.a < 1.0)) throw std::domain_error("2F1(a, b; b+1; z) requires 0 < a < 1");
    if (!(args.b > 0.0)) throw std::domain_error("2F1(a, b; b+1; z) requires b > 0");
    if (!(args.z >= 0.0 && args.z <= 1.0)) throw std::domain_error("2F1(a, b; b+1; z) requires 0 <= z <= 1");
}

} // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0)) throw std::domain_error("ln_gamma requires x > 0");
    if (x < 0.5) return ln_gamma_lanczos(x + 1.0) - std::log(x);
    return ln_gamma_lanczos(x);
}

namespace hyp2f1_detail {

double series(double a, double b, double z)
{
    // sum_k (a)_k / k! * b / (b + k) * z^k; all terms positive for admissible a, b.
    double poch = 1.0; // (a)_k / k! * z^k
    double sum = 1.0;
    for (int k = 1; k < 2000; ++k) {
        poch *= (a + k - 1) / k * z;
        const double term = poch * b / (b + k);
        sum += term;
        if (term <= 1e-17 * sum) break;
    }
    return sum;
}

double gauss_sum(double a, double b)
{
    return std::exp(ln_gamma(b + 1.0) + ln_gamma(1.0 - a) - ln_gamma(b + 1.0 - a));
}

double incomplete_beta_quadrature(double a, double b, double z)
{
    // int_0^z t^{b-1} (1-t)^{-a} dt, split at t = 1/2 so each piece carries one
    // endpoint singularity, removed by substitution:
    //   [0, t1]:  t = s^{1/b}               -> (1/b) int_0^{t1^b} (1 - s^{1/b})^{-a} ds
    //   [t1, z]:  s = (1 - t)^{1-a}          -> 1/(1-a) int_{(1-z)^{1-a}}^{(1-t1)^{1-a}} t(s)^{b-1} ds
    const double t1 = std::min(z, 0.5);
    const double inv_b = 1.0 / b;
    const auto head = [&](double s) { return std::pow(1.0 - std::pow(s, inv_b), -a); };
    double integral = quad::integrate(head, 0.0, std::pow(t1, b)).value * inv_b;
    if (z > t1) {
        const double inv_1ma = 1.0 / (1.0 - a);
        const auto tail = [&](double s) { return std::pow(1.0 - std::pow(s, inv_1ma), b - 1.0); };
        const double s_lo = std::pow(1.0 - z, 1.0 - a);
        const double s_hi = std::pow(1.0 - t1, 1.0 - a);
        integral += quad::integrate(tail, s_lo, s_hi).value * inv_1ma;
    }
    return b * std::pow(z, -b) * integral;
}

} // namespace hyp2f1_detail

double hyp2f1_b_plus_one(const Hyp2F1Args& args)
{
    check_args(args);
    const auto [a, b, z] = args;
    if (z == 0.0) return 1.0;
    if (z == 1.0) return hyp2f1_detail::gauss_sum(a, b);
    if (z <= hyp2f1_detail::series_cutoff) return hyp2f1_detail::series(a, b, z);
    return hyp2f1_detail::incomplete_beta_quadrature(a, b, z);
}

} // namespace ksharp
