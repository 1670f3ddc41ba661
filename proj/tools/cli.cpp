#include "cli.hpp"

#include "ksharp/diagnostics.hpp"
#include "ksharp/format.hpp"
#include "ksharp/io.hpp"
#include "ksharp/model.hpp"
#include "ksharp/travwave.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace ksharp::cli {

std::string resolve_output(const std::string& path)
{
    const std::filesystem::path p(path);
    const char* dir = std::getenv(output_dir_env);
    if (p.is_absolute() || dir == nullptr || *dir == '\0') return path;
    return (std::filesystem::path(dir) / p).string();
}

InitialField make_initial(const RunManifest& mf)
{
    const Grid grid = mf.grid();
    const double x0 = mf.x0 < 0.0 ? 0.5 * mf.length : mf.x0;
    InitialField init;
    auto& u = init.state.values;
    u.assign(grid.npoints(), 0.0);
    // Periodic images: distance to the crest measured on the circle.
    const auto offset = [&](std::size_t j) {
        double d = std::remainder(grid.x(j) - x0, mf.length);
        return d;
    };
    switch (mf.initial) {
    case InitialData::zero: break;
    case InitialData::kdv_soliton:
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = kdv_soliton(mf.c, offset(j));
        break;
    case InitialData::peakompacton: {
        const Peakompacton w = build_peakompacton(mf.params(), mf.c);
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = profile(w, offset(j));
        break;
    }
    case InitialData::gaussian:
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double s = offset(j) / mf.width;
            u[j] = mf.amplitude * std::exp(-s * s);
        }
        break;
    }
    const double width = mf.mollify >= 0.0 ? mf.mollify : (mf.initial == InitialData::peakompacton ? 2.0 : 0.0);
    if (width > 0.0) {
        std::vector<double> smooth = mollify(u, grid, width * grid.spacing());
        for (std::size_t j = 0; j < u.size(); ++j) {
            init.mollification_linf = std::max(init.mollification_linf, std::abs(smooth[j] - u[j]));
        }
        u = std::move(smooth);
    }
    return init;
}

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string format_for(const std::string& path, const std::string& requested)
{
    if (!requested.empty()) {
        if (requested != "csv" && requested != "json") throw UsageError("--format must be csv or json");
        return requested;
    }
    return std::filesystem::path(path).extension() == ".json" ? "json" : "csv";
}

// ---- profile ---------------------------------------------------------------

struct ProfileArgs {
    int n = 1;
    int m = 3;
    double c = 0.75;
    std::size_t samples = 401;
    std::string out = "profile.csv";
    std::string format;
};

int cmd_profile(const ProfileArgs& a, std::ostream& out)
{
    if (a.samples < 2) throw UsageError("--samples must be at least 2");
    const Peakompacton w = build_peakompacton(HierarchyParams(a.n, a.m), a.c);
    nlohmann::ordered_json header;
    header["n"] = a.n;
    header["m"] = a.m;
    header["c"] = a.c;
    header["u_max"] = w.u_max;
    header["xi0"] = w.xi0;
    header["kappa"] = w.kappa;
    header["gamma"] = w.gamma_coef;

    const double lo = -1.2 * w.xi0;
    const double step = 2.4 * w.xi0 / static_cast<double>(a.samples - 1);
    std::vector<double> xs(a.samples);
    std::vector<double> us(a.samples);
    for (std::size_t i = 0; i < a.samples; ++i) {
        xs[i] = i + 1 == a.samples ? 1.2 * w.xi0 : lo + step * static_cast<double>(i);
        us[i] = profile(w, xs[i]);
    }

    const std::string path = resolve_output(a.out);
    std::ostringstream body;
    if (format_for(path, a.format) == "json") {
        nlohmann::ordered_json doc;
        doc["header"] = header;
        doc["xi"] = xs;
        doc["u"] = us;
        body << doc.dump() << '\n';
    } else {
        body << "xi,u\r\n";
        for (std::size_t i = 0; i < xs.size(); ++i) body << fmt_double(xs[i]) << ',' << fmt_double(us[i]) << "\r\n";
    }
    write_file(path, body.str());
    out << header.dump() << '\n';
    return exit_ok;
}

// ---- scale -----------------------------------------------------------------

struct ScaleArgs {
    double epsilon = 1.0;
    double delta = 1.0;
    int n = 1;
    int m = 1;
    double vee = 1.0;
};

int cmd_scale(const ScaleArgs& a, std::ostream& out)
{
    const HierarchyParams p(a.n, a.m);
    const DimensionalForm d = scales_from_coefficients(a.epsilon, a.delta, p, a.vee);
    const Coefficients back = coefficients_from_scales(d, p);
    const double err = std::max(std::abs(back.epsilon - a.epsilon) / a.epsilon, std::abs(back.delta - a.delta) / a.delta);
    out << "ell = " << fmt_double(d.ell) << '\n'
        << "tau = " << fmt_double(d.tau) << '\n'
        << "V = " << fmt_double(d.vee) << '\n'
        << "roundtrip epsilon = " << fmt_double(back.epsilon) << " delta = " << fmt_double(back.delta)
        << " max_rel_error = " << fmt_double(err) << '\n';
    return exit_ok;
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const std::string& manifest_path, std::ostream& out, std::ostream& err)
{
    RunManifest mf;
    try {
        mf = RunManifest::parse(read_file(manifest_path));
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    const HierarchyParams p = mf.params();
    const Grid grid = mf.grid();
    const InitialField init = make_initial(mf);
    SolverConfig cfg = mf.solver();
    if (cfg.dt == 0.0) cfg.dt = stable_time_step(init.state.values, p, grid, cfg);

    SnapshotSeries snaps;
    snaps.grid = grid;
    snaps.params = p;
    RunOptions opts;
    opts.t_end = mf.t_end;
    opts.diagnostics_every = std::max<std::size_t>(1, mf.diagnostics_every);
    opts.ik_orders = mf.ik;
    const std::size_t snap_every = mf.snapshot_every == 0 ? static_cast<std::size_t>(-1) : mf.snapshot_every;
    opts.observers.push_back({snap_every, [&](const State& s) { snaps.append(s); }});

    const RunResult res = ksharp::run(init.state, p, grid, cfg, opts);

    const std::string snap_path = resolve_output(mf.snapshots);
    const std::string diag_path = resolve_output(mf.diagnostics);
    try {
        std::ostringstream s;
        if (mf.snapshot_format == "json") s << snaps.to_json() << '\n';
        else snaps.write_csv(s);
        write_file(snap_path, s.str());
        std::ostringstream d;
        if (mf.diagnostics_format == "json") d << res.record.to_json() << '\n';
        else res.record.write_csv(d);
        write_file(diag_path, d.str());
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }

    const auto& rec = res.record;
    out << "steps = " << res.steps << " dt = " << fmt_double(res.dt_used) << " t = " << fmt_double(res.final_state.time)
        << '\n';
    if (init.mollification_linf > 0.0) out << "mollification_linf = " << fmt_double(init.mollification_linf) << '\n';
    out << "drift mass = " << fmt_double(relative_drift(rec.mass))
        << " momentum = " << fmt_double(relative_drift(rec.momentum))
        << " energy = " << fmt_double(relative_drift(rec.energy));
    for (std::size_t i = 0; i < rec.ik_orders.size(); ++i) {
        out << " I" << rec.ik_orders[i] << " = " << fmt_double(relative_drift(rec.ik[i]));
    }
    out << '\n';
    if (res.status == RunStatus::blew_up) {
        err << "error: numerical blow-up: " << res.message << " (partial outputs written)\n";
        return exit_blow_up;
    }
    return exit_ok;
}

// ---- invariants ------------------------------------------------------------

struct InvariantArgs {
    std::string snapshots;
    int n = 0;
    int m = 0;
    std::vector<int> k{1, 2, 3};
    std::string scheme = "fourier";
    std::string out;
};

int cmd_invariants(const InvariantArgs& a, std::ostream& out, std::ostream& err)
{
    SnapshotSeries s;
    try {
        s = SnapshotSeries::load(a.snapshots);
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    const HierarchyParams p(a.n > 0 ? a.n : s.params.n, a.m > 0 ? a.m : s.params.m);
    const Scheme scheme = scheme_from_string(a.scheme);
    for (int k : a.k) {
        if (k < 1) throw UsageError("--k orders must be >= 1");
    }
    std::ostringstream csv;
    csv << "t,mass,momentum,energy";
    for (int k : a.k) csv << ",I" << k;
    csv << "\r\n";
    for (std::size_t r = 0; r < s.times.size(); ++r) {
        const State st{s.times[r], s.fields[r]};
        csv << fmt_double(st.time) << ',' << fmt_double(mass(st, s.grid)) << ',' << fmt_double(momentum(st, s.grid))
            << ',' << fmt_double(energy(st, s.grid, p, scheme));
        for (int k : a.k) csv << ',' << fmt_double(ik(st, s.grid, k));
        csv << "\r\n";
    }
    if (a.out.empty()) {
        out << csv.str();
    } else {
        try {
            write_file(resolve_output(a.out), csv.str());
        } catch (const std::ios_base::failure& e) {
            err << "error: " << e.what() << '\n';
            return exit_io;
        }
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Peaked compact waves and conservation laws of the K#(n,m) hierarchy"};
    app.require_subcommand(1);

    ProfileArgs pa;
    auto* profile = app.add_subcommand("profile", "Sample a peakompacton over [-1.2 xi0, 1.2 xi0]");
    profile->add_option("--n", pa.n, "advective exponent")->capture_default_str();
    profile->add_option("--m", pa.m, "dispersive exponent (>= 2)")->capture_default_str();
    profile->add_option("--c", pa.c, "wave speed")->capture_default_str();
    profile->add_option("--samples", pa.samples, "number of xi samples")->capture_default_str();
    profile->add_option("--out", pa.out, "output file")->capture_default_str();
    profile->add_option("--format", pa.format, "csv or json (default: from the file extension)");

    std::string manifest;
    auto* simulate = app.add_subcommand("simulate", "Run the method-of-lines solver from a manifest");
    simulate->add_option("--manifest", manifest, "key=value or JSON run manifest")->required();

    ScaleArgs sa;
    auto* scale = app.add_subcommand("scale", "Characteristic scales for a dimensional form");
    scale->add_option("--epsilon", sa.epsilon, "advective coefficient")->required();
    scale->add_option("--delta", sa.delta, "dispersive coefficient")->required();
    scale->add_option("--n", sa.n, "advective exponent")->capture_default_str();
    scale->add_option("--m", sa.m, "dispersive exponent")->capture_default_str();
    scale->add_option("--V", sa.vee, "velocity scale")->capture_default_str();

    InvariantArgs ia;
    auto* invariants = app.add_subcommand("invariants", "Evaluate M, P, H and I_k on stored snapshots");
    invariants->add_option("--snapshots", ia.snapshots, "snapshot file (CSV or JSON)")->required();
    invariants->add_option("--n", ia.n, "advective exponent (default: from the file)");
    invariants->add_option("--m", ia.m, "dispersive exponent (default: from the file)");
    invariants->add_option("--k", ia.k, "comma-separated I_k orders")->delimiter(',')->capture_default_str();
    invariants->add_option("--scheme", ia.scheme, "derivative used in H: fourier or fd4")->capture_default_str();
    invariants->add_option("--out", ia.out, "write CSV here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_args;
    }

    try {
        if (*profile) return cmd_profile(pa, out);
        if (*scale) return cmd_scale(sa, out);
        if (*simulate) return cmd_simulate(manifest, out, err);
        if (*invariants) return cmd_invariants(ia, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_args;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid_args;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const NumericalBlowUp& e) {
        err << "error: " << e.what() << '\n';
        return exit_blow_up;
    }
    return exit_invalid_args;
}

} // namespace ksharp::cli
