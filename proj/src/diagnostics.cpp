#include "ksharp/diagnostics.hpp"

#include "ksharp/format.hpp"
#include "ksharp/kernels.hpp"
#include "ksharp/simulate.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ksharp {

double mass(const State& state, const Grid& grid)
{
    return 0.5 * kernels::active().sum_power(state.values, 1) * grid.spacing();
}

double momentum(const State& state, const Grid& grid)
{
    // + 0.0 turns the -0 of an all-zero field into +0
    return -0.5 * kernels::active().sum_power(state.values, 2) * grid.spacing() + 0.0;
}

double ik(const State& state, const Grid& grid, int k)
{
    if (k < 1) throw std::invalid_argument("I_k requires k >= 1");
    return kernels::active().sum_power(state.values, k) * grid.spacing();
}

double energy(const State& state, const Grid& grid, const HierarchyParams& p, Scheme scheme)
{
    const auto& kt = kernels::active();
    const std::vector<double> ux = derivative(state.values, 1, grid, scheme);
    const double potential = kt.sum_power(state.values, p.n + 2) / ((p.n + 2.0) * (p.n + 1.0));
    const double dispersive = kt.sum_power(ux, p.m + 1) / (p.m + 1.0);
    return (dispersive - potential) * grid.spacing();
}

void DiagnosticsRecord::sample(const State& state, const Grid& grid, const HierarchyParams& p, Scheme scheme)
{
    if (ik.size() != ik_orders.size()) ik.resize(ik_orders.size());
    times.push_back(state.time);
    mass.push_back(ksharp::mass(state, grid));
    momentum.push_back(ksharp::momentum(state, grid));
    energy.push_back(ksharp::energy(state, grid, p, scheme));
    for (std::size_t i = 0; i < ik_orders.size(); ++i) ik[i].push_back(ksharp::ik(state, grid, ik_orders[i]));
    if (const auto peak = track_peak(state, grid)) {
        peak_location.push_back(peak->location);
        peak_height.push_back(peak->height);
    } else {
        peak_location.push_back(0.0);
        peak_height.push_back(state.values.empty() ? 0.0 : state.values.front());
    }
}

void DiagnosticsRecord::write_csv(std::ostream& os) const
{
    os << "t,mass,momentum,energy,peak_location,peak_height";
    for (int k : ik_orders) os << ",I" << k;
    os << "\r\n";
    for (std::size_t r = 0; r < times.size(); ++r) {
        os << fmt_double(times[r]) << ',' << fmt_double(mass[r]) << ',' << fmt_double(momentum[r]) << ','
           << fmt_double(energy[r]) << ',' << fmt_double(peak_location[r]) << ',' << fmt_double(peak_height[r]);
        for (const auto& series : ik) os << ',' << fmt_double(series[r]);
        os << "\r\n";
    }
}

std::string DiagnosticsRecord::to_json() const
{
    nlohmann::ordered_json j;
    j["times"] = times;
    j["mass"] = mass;
    j["momentum"] = momentum;
    j["energy"] = energy;
    j["peak_location"] = peak_location;
    j["peak_height"] = peak_height;
    nlohmann::ordered_json iks = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < ik_orders.size(); ++i) {
        iks.push_back({{"k", ik_orders[i]}, {"values", ik[i]}});
    }
    j["ik"] = iks;
    return j.dump(2);
}

double relative_drift(std::span<const double> series)
{
    if (series.empty()) return 0.0;
    const double x0 = series.front();
    double worst = 0.0;
    for (double x : series) worst = std::max(worst, std::abs(x - x0));
    return x0 != 0.0 ? worst / std::abs(x0) : worst;
}

} // namespace ksharp
