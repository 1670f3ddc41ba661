#pragma once

#include <cmath>
#include <vector>

namespace ksharp::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kronrod_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kronrod_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
Result gk15(const F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kronrod_weights[7] * fc;
    double gauss = gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kronrod_nodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[i] * pair;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half), 1};
}

} // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature with global error control:
/// the panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol*|I|). Integrands must be finite
/// on the closed interval; remove endpoint singularities by substitution first.
template <class F>
Result integrate(const F& f, double a, double b, double rel_tol = 1e-14, double abs_tol = 0.0,
                 int max_intervals = 500)
{
    struct Panel {
        double a, b;
        Result r;
    };
    std::vector<Panel> panels;
    panels.push_back({a, b, detail::gk15(f, a, b)});
    double value = panels.front().r.value;
    double error = panels.front().r.error;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && static_cast<int>(panels.size()) < max_intervals) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].r.error > panels[worst].r.error) worst = i;
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b)) break; // panel exhausted at machine resolution
        Panel left{p.a, mid, detail::gk15(f, p.a, mid)};
        Panel right{mid, p.b, detail::gk15(f, mid, p.b)};
        value += left.r.value + right.r.value - p.r.value;
        error += left.r.error + right.r.error - p.r.error;
        panels[worst] = left;
        panels.push_back(right);
    }
    // Re-sum to shed the drift of the running updates.
    Result out;
    for (const auto& p : panels) {
        out.value += p.r.value;
        out.error += p.r.error;
    }
    out.intervals = static_cast<int>(panels.size());
    return out;
}

} // namespace ksharp::quad
