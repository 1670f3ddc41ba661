#pragma once

#include "ksharp/simulate.hpp"

#include <string>
#include <vector>

namespace ksharp::cli {

enum class InitialData { zero, kdv_soliton, peakompacton, gaussian };

std::string to_string(InitialData d);
InitialData initial_data_from_string(const std::string& s);

/// Everything that determines a simulation run. There is no randomness
/// anywhere in a run, so a manifest reproduces its outputs byte for byte on
/// the same build and machine.
struct RunManifest {
    // physics
    int n = 1;
    int m = 1;
    double c = 0.75;             ///< wave speed of soliton/peakompacton initial data
    InitialData initial = InitialData::kdv_soliton;
    double x0 = -1.0;            ///< crest position; negative selects L/2
    double amplitude = 1.0;      ///< gaussian initial data only
    double width = 1.0;          ///< gaussian initial data only
    double mollify = -1.0;       ///< Gaussian pre-filter width in grid spacings; negative selects 2 for peakompactons, 0 otherwise

    // grid
    double length = 40.0;
    std::size_t npoints = 512;

    // solver
    double dt = 0.0;             ///< 0 selects stable_time_step() of the initial data
    double t_end = 1.0;
    Scheme scheme = Scheme::fourier_collocation;
    bool dealias = true;
    double nu = 0.0;
    FluxForm form = FluxForm::skew_symmetric;
    bool signed_power = false;
    double cfl = 0.85;

    // outputs
    std::vector<int> ik{3};
    std::size_t diagnostics_every = 100;
    std::size_t snapshot_every = 0; ///< 0 stores only the first and last state
    std::string snapshots = "snapshots.csv";
    std::string snapshot_format = "csv";
    std::string diagnostics = "diagnostics.csv";
    std::string diagnostics_format = "csv";
    bool deterministic = true;

    /// key = value lines, '#' comments. Unknown keys are rejected.
    static RunManifest parse_key_value(const std::string& text);
    static RunManifest parse_json(const std::string& text);
    /// Dispatches on a leading '{'.
    static RunManifest parse(const std::string& text);

    std::string to_key_value() const;
    std::string to_json() const;

    /// Throws std::invalid_argument describing the first inconsistency.
    void validate() const;

    HierarchyParams params() const { return {n, m}; }
    Grid grid() const { return {length, npoints}; }
    SolverConfig solver() const;
};

} // namespace ksharp::cli
