#include "ksharp/simulate.hpp"

#include "ksharp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ksharp {

Grid::Grid(double length, std::size_t npoints) : length_(length), npoints_(npoints)
{
    if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("grid length must be positive");
    if (npoints < 16 || npoints % 2 != 0) throw std::invalid_argument("grid needs an even number of points >= 16");
}

std::string to_string(Scheme s)
{
    return s == Scheme::fourier_collocation ? "fourier" : "fd4";
}

Scheme scheme_from_string(const std::string& s)
{
    if (s == "fourier" || s == "fourier_collocation") return Scheme::fourier_collocation;
    if (s == "fd4" || s == "centered_fd4") return Scheme::centered_fd4;
    throw std::invalid_argument("unknown scheme '" + s + "' (expected fourier or fd4)");
}

std::string to_string(FluxForm f)
{
    return f == FluxForm::literal ? "literal" : "skew";
}

FluxForm flux_form_from_string(const std::string& s)
{
    if (s == "literal") return FluxForm::literal;
    if (s == "skew" || s == "skew_symmetric") return FluxForm::skew_symmetric;
    throw std::invalid_argument("unknown flux form '" + s + "' (expected literal or skew)");
}

std::vector<double> derivative(std::span<const double> values, int order, const Grid& grid, Scheme scheme,
                               bool dealias)
{
    if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
    if (values.size() != grid.npoints()) throw std::invalid_argument("field size does not match the grid");
    std::vector<double> out(values.size());
    if (scheme == Scheme::fourier_collocation) {
        SpectralOperator op(grid.npoints(), grid.length());
        op.derivative(values, order, dealias, out);
    } else {
        const double h = grid.spacing();
        if (order == 1) kernels::active().fd4_first(values, 1.0 / h, out);
        else kernels::active().fd4_second(values, 1.0 / (h * h), out);
    }
    return out;
}

RightHandSide::RightHandSide(const HierarchyParams& p, const Grid& grid, const SolverConfig& config)
    : p_(p), grid_(grid), config_(config)
{
    if (!(config.smoothing >= 0.0)) throw std::invalid_argument("smoothing coefficient must be >= 0");
    const std::size_t n = grid.npoints();
    for (auto* v : {&v_, &d_, &a_, &f_, &w_, &tmp_}) v->resize(n);
    if (config.scheme == Scheme::fourier_collocation) {
        spectral_.emplace(n, grid.length());
        for (auto* s : {&uh_, &ah_, &fh_, &wh_}) s->resize(spectral_->modes());
    }
}

void RightHandSide::operator()(std::span<const double> u, std::span<double> out)
{
    if (u.size() != grid_.npoints() || out.size() != grid_.npoints()) {
        throw std::invalid_argument("field size does not match the grid");
    }
    if (spectral_) fourier(u, out);
    else finite_difference(u, out);
    if (!kernels::active().all_finite(out)) throw NumericalBlowUp("right-hand side is not finite");
}

void RightHandSide::project(std::span<double> u)
{
    if (!spectral_ || !config_.dealias) return;
    const SpectralOperator& op = *spectral_;
    spectral_->filter(u, [&](std::size_t j, double) { return op.resolved(j) ? 1.0 : 0.0; }, u);
}

// Flux pieces shared by both schemes, all pointwise:
//   a = alpha u^n v                       (multiplier 1)
//   f = beta u^{n+1} + sigma v^{m-1} d    (multiplier D)
//   w = sigma v^m                         (multiplier D^2)
// with v = Du, d = D^2 u and du/dt = -a - D f - D^2 w - nu D^4 u.
namespace {

struct Split {
    double alpha, beta, sigma;
    bool flux;
};

Split split_for(const HierarchyParams& p, FluxForm form)
{
    if (form == FluxForm::literal) return {1.0, 0.0, 1.0, false};
    const double alpha = 1.0 / (p.n + 2.0);
    return {alpha, (1.0 - alpha) / (p.n + 1.0), p.m / (p.m + 1.0), true};
}

} // namespace

void RightHandSide::fourier(std::span<const double> u, std::span<double> out)
{
    const auto& kt = kernels::active();
    SpectralOperator& op = *spectral_;
    const std::size_t modes = op.modes();
    const Split s = split_for(p_, config_.form);
    const bool dealias = config_.dealias;
    const auto keep = [&](std::size_t j) { return !(dealias && !op.resolved(j)); };

    op.forward(u, uh_);
    // v = D u
    for (std::size_t j = 0; j < modes; ++j) {
        const bool zero = !keep(j) || op.nyquist(j);
        wh_[j] = zero ? 0.0 : std::complex<double>{0.0, op.wavenumber(j)} * uh_[j];
    }
    op.inverse(wh_, v_);

    kt.power_mul(u, p_.n, v_, s.alpha, a_);
    kt.power(v_, p_.m, config_.signed_power, s.sigma, w_);
    op.forward(a_, ah_);
    op.forward(w_, wh_);
    if (s.flux) {
        // d = D^2 u, consistent with D applied twice
        for (std::size_t j = 0; j < modes; ++j) {
            const double k = op.wavenumber(j);
            fh_[j] = (keep(j) && !op.nyquist(j)) ? -k * k * uh_[j] : 0.0;
        }
        op.inverse(fh_, d_);
        kt.power(u, p_.n + 1, false, s.beta, f_);
        kt.power_mul(v_, p_.m - 1, d_, s.sigma, tmp_);
        kt.axpy(1.0, tmp_, f_, f_);
        op.forward(f_, fh_);
    }

    const double nu = config_.smoothing;
    auto& rh = ah_;
    for (std::size_t j = 0; j < modes; ++j) {
        if (!keep(j)) {
            rh[j] = 0.0;
            continue;
        }
        const double k = op.wavenumber(j);
        const double k2 = k * k;
        std::complex<double> r = -ah_[j] + k2 * wh_[j];
        if (s.flux && !op.nyquist(j)) r -= std::complex<double>{0.0, k} * fh_[j];
        if (nu > 0.0) r -= nu * k2 * k2 * uh_[j];
        rh[j] = r;
    }
    op.inverse(rh, out);
}

void RightHandSide::finite_difference(std::span<const double> u, std::span<double> out)
{
    const auto& kt = kernels::active();
    const Split s = split_for(p_, config_.form);
    const double h = grid_.spacing();
    const double inv_h = 1.0 / h;
    const double inv_h2 = 1.0 / (h * h);

    kt.fd4_first(u, inv_h, v_);
    kt.power_mul(u, p_.n, v_, s.alpha, a_);
    kt.power(v_, p_.m, config_.signed_power, s.sigma, w_);
    if (s.flux) {
        // Only the skew-symmetric first-derivative stencil appears, so D^2 = D D.
        kt.fd4_first(v_, inv_h, d_);
        kt.power(u, p_.n + 1, false, s.beta, f_);
        kt.power_mul(v_, p_.m - 1, d_, s.sigma, tmp_);
        kt.axpy(1.0, tmp_, f_, f_);
        kt.fd4_first(w_, inv_h, tmp_);
        kt.axpy(1.0, tmp_, f_, f_);
        kt.fd4_first(f_, inv_h, tmp_);
        // out = -a - D f
        kt.axpy(1.0, tmp_, a_, out);
    } else {
        kt.fd4_second(w_, inv_h2, tmp_);
        kt.axpy(1.0, tmp_, a_, out);
    }
    if (config_.smoothing > 0.0) {
        kt.fd4_second(u, inv_h2, d_);
        kt.fd4_second(d_, inv_h2, tmp_);
        kt.axpy(config_.smoothing, tmp_, out, out);
    }
    for (double& x : out) x = -x;
}

std::vector<double> rhs(const State& state, const HierarchyParams& p, const Grid& grid, const SolverConfig& config)
{
    RightHandSide f(p, grid, config);
    std::vector<double> out(grid.npoints());
    f(state.values, out);
    return out;
}

Rk4Stepper::Rk4Stepper(const HierarchyParams& p, const Grid& grid, const SolverConfig& config)
    : rhs_(p, grid, config)
{
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &stage_}) v->resize(grid.npoints());
}

void Rk4Stepper::step(State& state, double dt)
{
    const auto& kt = kernels::active();
    auto& u = state.values;
    rhs_(u, k1_);
    kt.axpy(0.5 * dt, k1_, u, stage_);
    rhs_(stage_, k2_);
    kt.axpy(0.5 * dt, k2_, u, stage_);
    rhs_(stage_, k3_);
    kt.axpy(dt, k3_, u, stage_);
    rhs_(stage_, k4_);
    kt.rk4_combine(u, k1_, k2_, k3_, k4_, dt / 6.0, u);
    state.time += dt;
}

State step_rk4(const State& state, const HierarchyParams& p, const Grid& grid, const SolverConfig& config)
{
    if (!(config.dt > 0.0)) throw std::invalid_argument("time step must be positive");
    Rk4Stepper stepper(p, grid, config);
    State next = state;
    stepper.step(next, config.dt);
    return next;
}

double stable_time_step(std::span<const double> u, const HierarchyParams& p, const Grid& grid,
                        const SolverConfig& config)
{
    // Linearized about the current field the right-hand side has symbol
    //   i |u|^n k + i m |u_x|^{m-1} k^3 - nu k^4,
    // evaluated at the largest retained wavenumber. The dispersive weight is
    // floored at 1 so that fields with vanishing slope (m > 1) still get a
    // finite step. RK4 is stable for |dt lambda| <= 2.8 on the imaginary axis
    // and 2.78 on the negative real axis.
    const auto& kt = kernels::active();
    const double h = grid.spacing();
    double kmax = std::numbers::pi / h;
    if (config.scheme == Scheme::fourier_collocation && config.dealias) kmax *= 2.0 / 3.0;
    const std::vector<double> ux = derivative(u, 1, grid, config.scheme);
    const double umax = kt.max_abs(u);
    const double uxmax = kt.max_abs(ux);
    const double k3 = kmax * kmax * kmax;
    const double dispersive = std::max(1.0, p.m * std::pow(uxmax, p.m - 1)) * k3;
    const double oscillatory = std::pow(umax, p.n) * kmax + dispersive;
    double dt = config.cfl * 2.8 / oscillatory;
    if (config.smoothing > 0.0) dt = std::min(dt, config.cfl * 2.78 / (config.smoothing * k3 * kmax));
    return dt;
}

std::optional<Peak> track_peak(const State& state, const Grid& grid)
{
    const auto& u = state.values;
    const std::size_t n = u.size();
    if (n < 3) return std::nullopt;
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    if (!(*hi - *lo > 1e-14 * std::max(1.0, std::abs(*hi)))) return std::nullopt;
    const std::size_t j = static_cast<std::size_t>(hi - u.begin());
    const double ym = u[(j + n - 1) % n];
    const double y0 = u[j];
    const double yp = u[(j + 1) % n];
    const double curvature = ym - 2.0 * y0 + yp;
    double offset = 0.0;
    double height = y0;
    if (curvature < 0.0) {
        offset = 0.5 * (ym - yp) / curvature;
        height = y0 - 0.25 * (ym - yp) * offset;
    }
    double x = (static_cast<double>(j) + offset) * grid.spacing();
    x = std::fmod(x, grid.length());
    if (x < 0.0) x += grid.length();
    return Peak{x, height};
}

std::vector<double> mollify(std::span<const double> values, const Grid& grid, double width)
{
    if (!(width >= 0.0)) throw std::invalid_argument("mollifier width must be >= 0");
    std::vector<double> out(values.begin(), values.end());
    if (width == 0.0) return out;
    SpectralOperator op(grid.npoints(), grid.length());
    op.filter(values, [&](std::size_t, double k) { return std::exp(-0.5 * k * k * width * width); }, out);
    return out;
}

RunResult run(const State& initial, const HierarchyParams& p, const Grid& grid, const SolverConfig& config,
              const RunOptions& options)
{
    if (!(options.t_end > initial.time)) throw std::invalid_argument("t_end must exceed the initial time");
    if (!(config.dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (initial.values.size() != grid.npoints()) throw std::invalid_argument("field size does not match the grid");

    const auto& kt = kernels::active();
    Rk4Stepper stepper(p, grid, config);
    RunResult result;
    result.record.ik_orders = options.ik_orders;
    State state = initial;
    stepper.rhs().project(state.values);

    const double span = options.t_end - initial.time;
    const auto steps = static_cast<std::size_t>(std::ceil(span / config.dt * (1.0 - 1e-12)));
    const double dt = span / static_cast<double>(steps);
    result.dt_used = dt;
    const double limit = config.blowup_factor * kt.max_abs(state.values);
    const std::size_t diag_every = std::max<std::size_t>(1, options.diagnostics_every);

    const auto observe = [&](std::size_t k, bool last) {
        if (k % diag_every == 0 || last) result.record.sample(state, grid, p, config.scheme);
        for (const auto& obs : options.observers) {
            if (obs.callback && (k % std::max<std::size_t>(1, obs.every) == 0 || last)) obs.callback(state);
        }
    };

    observe(0, false);
    for (std::size_t k = 1; k <= steps; ++k) {
        State next = state;
        try {
            stepper.step(next, dt);
        } catch (const NumericalBlowUp& e) {
            result.status = RunStatus::blew_up;
            result.message = std::string(e.what()) + " at t = " + std::to_string(state.time);
            break;
        }
        next.time = initial.time + static_cast<double>(k) * dt;
        const double mx = kt.max_abs(next.values);
        if (!std::isfinite(mx) || mx > limit) {
            result.status = RunStatus::blew_up;
            result.message = "max|u| = " + std::to_string(mx) + " exceeded the blow-up limit at t = " +
                             std::to_string(next.time);
            break;
        }
        state = std::move(next);
        result.steps = k;
        observe(k, k == steps);
    }
    if (result.status == RunStatus::blew_up && result.record.times.back() != state.time) {
        result.record.sample(state, grid, p, config.scheme);
    }
    result.final_state = std::move(state);
    return result;
}

} // namespace ksharp
