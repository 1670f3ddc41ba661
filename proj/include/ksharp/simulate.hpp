#pragma once

#include "ksharp/diagnostics.hpp"
#include "ksharp/model.hpp"
#include "ksharp/spectral.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksharp {

/// Periodic, equispaced mesh x_j = j h, h = L / N, j = 0..N-1.
class Grid {
public:
    /// Requires L > 0 and an even N >= 16.
    Grid(double length, std::size_t npoints);

    double length() const noexcept { return length_; }
    std::size_t npoints() const noexcept { return npoints_; }
    double spacing() const noexcept { return length_ / static_cast<double>(npoints_); }
    double x(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double length_;
    std::size_t npoints_;
};

struct State {
    double time = 0.0;
    std::vector<double> values;
};

enum class Scheme { fourier_collocation, centered_fd4 };

/// How the flux terms are split before discretization.
///
/// literal:         u^n D u + D^2 [(D u)^m]
/// skew_symmetric:  [u^n D u + D(u^{n+1})]/(n+2)
///                  + m/(m+1) D[(Du)^{m-1} D^2 u + D (Du)^m]
///
/// Both are consistent with the continuum equation; the skew-symmetric
/// split makes the discrete sum of u^2 an exact invariant of the
/// semi-discrete system.
enum class FluxForm { literal, skew_symmetric };

struct SolverConfig {
    double dt = 1e-4;
    Scheme scheme = Scheme::fourier_collocation;
    bool dealias = true;        ///< two-thirds rule, Fourier scheme only
    double smoothing = 0.0;     ///< hyperdiffusion coefficient nu, adds -nu D^4 u
    bool signed_power = false;  ///< use |u_x|^{m-1} u_x in place of (u_x)^m for even m
    FluxForm form = FluxForm::skew_symmetric;
    double blowup_factor = 1e3; ///< abort once max|u| exceeds this multiple of the initial max
    double cfl = 0.85;          ///< safety factor used by stable_time_step()
};

/// Thrown when a stage of the integrator produces a non-finite value.
class NumericalBlowUp : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);
std::string to_string(FluxForm f);
FluxForm flux_form_from_string(const std::string& s);

/// Periodic derivative of order 1 or 2 of a sampled field. Throws
/// std::invalid_argument for other orders.
std::vector<double> derivative(std::span<const double> values, int order, const Grid& grid, Scheme scheme,
                               bool dealias = false);

/// Reusable evaluator of the semi-discrete right-hand side
/// du/dt = -u^n u_x - [(u_x)^m]_xx - nu u_xxxx.
class RightHandSide {
public:
    RightHandSide(const HierarchyParams& p, const Grid& grid, const SolverConfig& config);

    /// Writes du/dt into out. Throws NumericalBlowUp if the result is not finite.
    void operator()(std::span<const double> u, std::span<double> out);

    /// Two-thirds-rule projection (Fourier scheme with dealiasing); identity otherwise.
    void project(std::span<double> u);

    const HierarchyParams& params() const noexcept { return p_; }
    const Grid& grid() const noexcept { return grid_; }
    const SolverConfig& config() const noexcept { return config_; }

private:
    void fourier(std::span<const double> u, std::span<double> out);
    void finite_difference(std::span<const double> u, std::span<double> out);

    HierarchyParams p_;
    Grid grid_;
    SolverConfig config_;
    std::optional<SpectralOperator> spectral_;
    std::vector<double> v_, d_, a_, f_, w_, tmp_;
    std::vector<std::complex<double>> uh_, ah_, fh_, wh_;
};

std::vector<double> rhs(const State& state, const HierarchyParams& p, const Grid& grid, const SolverConfig& config);

/// Classical four-stage Runge-Kutta stepper with preallocated stage storage.
class Rk4Stepper {
public:
    Rk4Stepper(const HierarchyParams& p, const Grid& grid, const SolverConfig& config);

    /// Advances in place by dt. Throws NumericalBlowUp on non-finite stages.
    void step(State& state, double dt);

    RightHandSide& rhs() noexcept { return rhs_; }

private:
    RightHandSide rhs_;
    std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

/// One step of size config.dt.
State step_rk4(const State& state, const HierarchyParams& p, const Grid& grid, const SolverConfig& config);

/// Largest RK4 step the linearized right-hand side tolerates, scaled by
/// config.cfl. Roughly cfl * 2.8 / (max(1, m max|u_x|^{m-1}) k_max^3), so it
/// shrinks like h^3 and must be re-evaluated when the slope grows.
double stable_time_step(std::span<const double> u, const HierarchyParams& p, const Grid& grid,
                        const SolverConfig& config);

struct Peak {
    double location; ///< in [0, L)
    double height;
};

/// Three-point parabolic fit around the largest sample. std::nullopt for a flat field.
std::optional<Peak> track_peak(const State& state, const Grid& grid);

/// Periodic Gaussian smoothing with standard deviation `width` (exact in Fourier space).
std::vector<double> mollify(std::span<const double> values, const Grid& grid, double width);

struct Observer {
    std::size_t every = 1; ///< invoke every `every` steps (plus the first and last state)
    std::function<void(const State&)> callback;
};

struct RunOptions {
    double t_end = 0.0;
    std::size_t diagnostics_every = 1; ///< steps between diagnostics samples
    std::vector<int> ik_orders;        ///< extra I_k series to record
    std::vector<Observer> observers;
};

enum class RunStatus { completed, blew_up };

struct RunResult {
    State final_state; ///< last finite state reached
    DiagnosticsRecord record;
    RunStatus status = RunStatus::completed;
    std::string message;
    std::size_t steps = 0;
    double dt_used = 0.0;
};

/// Integrates to t_end with equal steps no larger than config.dt. With the
/// Fourier scheme and dealiasing the initial data are first projected onto
/// the resolved modes. Stops early, keeping everything recorded so far, if
/// the field becomes non-finite or max|u| exceeds blowup_factor times its
/// initial value.
RunResult run(const State& initial, const HierarchyParams& p, const Grid& grid, const SolverConfig& config,
              const RunOptions& options);

} // namespace ksharp
