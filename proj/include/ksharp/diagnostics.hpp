#pragma once

#include "ksharp/model.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ksharp {

class Grid;
struct State;
enum class Scheme;

// Conserved functionals evaluated with the periodic rectangle rule, which is
// spectrally accurate for smooth periodic integrands and second order across
// the kinks of compactly supported data. The infinite-line integrals are
// approximated by keeping the wave well inside the box (L >= 6 xi0 for
// peaked compact waves).

/// M = 1/2 sum u_j h
double mass(const State& state, const Grid& grid);
/// P = -1/2 sum u_j^2 h
double momentum(const State& state, const Grid& grid);
/// H = sum h [ -u^{n+2}/((n+2)(n+1)) + (D u)^{m+1}/(m+1) ]
double energy(const State& state, const Grid& grid, const HierarchyParams& p, Scheme scheme);
/// I_k = sum u_j^k h. Throws std::invalid_argument for k < 1.
double ik(const State& state, const Grid& grid, int k);

/// Time series of the functionals along a run. All series share `times`.
struct DiagnosticsRecord {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> momentum;
    std::vector<double> energy;
    std::vector<int> ik_orders;
    std::vector<std::vector<double>> ik; ///< ik[i] is the series for ik_orders[i]
    std::vector<double> peak_location;
    std::vector<double> peak_height;

    std::size_t size() const noexcept { return times.size(); }

    /// Samples every functional at the given state. A flat field has no
    /// peak; its location is then reported as 0 and its height as max u.
    void sample(const State& state, const Grid& grid, const HierarchyParams& p, Scheme scheme);

    /// Header: t,mass,momentum,energy,peak_location,peak_height[,I<k>...]
    void write_csv(std::ostream& os) const;
    std::string to_json() const;
};

/// max_t |X(t) - X(0)| / |X(0)|, or the absolute deviation when X(0) == 0.
double relative_drift(std::span<const double> series);

} // namespace ksharp
