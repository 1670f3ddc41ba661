#include "ksharp/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ksharp {

namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

} // namespace

struct SpectralOperator::Plans {
    std::unique_ptr<double, FftwFree> real;
    std::unique_ptr<fftw_complex, FftwFree> cplx;
    std::vector<std::complex<double>> scratch;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;

    Plans(std::size_t n)
        : real(fftw_alloc_real(n)), cplx(fftw_alloc_complex(n / 2 + 1)), scratch(n / 2 + 1)
    {
        if (!real || !cplx) throw std::bad_alloc();
        const int len = static_cast<int>(n);
        // FFTW_ESTIMATE keeps the chosen algorithm, and hence every rounding, reproducible.
        std::lock_guard lock(planner_mutex());
        r2c = fftw_plan_dft_r2c_1d(len, real.get(), cplx.get(), FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(len, cplx.get(), real.get(), FFTW_ESTIMATE);
        if (r2c == nullptr || c2r == nullptr) throw std::runtime_error("FFTW planning failed");
    }

    ~Plans()
    {
        std::lock_guard lock(planner_mutex());
        if (r2c != nullptr) fftw_destroy_plan(r2c);
        if (c2r != nullptr) fftw_destroy_plan(c2r);
    }
};

SpectralOperator::SpectralOperator(std::size_t n, double length)
    : n_(n), dk_(2.0 * std::numbers::pi / length)
{
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("spectral grid needs an even number of points");
    if (!(length > 0.0)) throw std::invalid_argument("spectral grid needs a positive length");
    plans_ = std::make_unique<Plans>(n);
}

SpectralOperator::~SpectralOperator() = default;
SpectralOperator::SpectralOperator(SpectralOperator&&) noexcept = default;
SpectralOperator& SpectralOperator::operator=(SpectralOperator&&) noexcept = default;

std::span<std::complex<double>> SpectralOperator::spectrum() noexcept { return plans_->scratch; }

void SpectralOperator::forward(std::span<const double> in, std::span<std::complex<double>> out)
{
    if (in.size() != n_ || out.size() != modes()) throw std::invalid_argument("forward transform size mismatch");
    std::copy(in.begin(), in.end(), plans_->real.get());
    fftw_execute(plans_->r2c);
    const fftw_complex* c = plans_->cplx.get();
    for (std::size_t j = 0; j < modes(); ++j) out[j] = {c[j][0], c[j][1]};
}

void SpectralOperator::inverse(std::span<const std::complex<double>> in, std::span<double> out)
{
    if (in.size() != modes() || out.size() != n_) throw std::invalid_argument("inverse transform size mismatch");
    fftw_complex* c = plans_->cplx.get();
    for (std::size_t j = 0; j < modes(); ++j) {
        c[j][0] = in[j].real();
        c[j][1] = in[j].imag();
    }
    fftw_execute(plans_->c2r);
    const double scale = 1.0 / static_cast<double>(n_);
    const double* r = plans_->real.get();
    for (std::size_t i = 0; i < n_; ++i) out[i] = r[i] * scale;
}

void SpectralOperator::derivative(std::span<const double> in, int order, bool dealias, std::span<double> out)
{
    if (order < 1 || order > 4) throw std::invalid_argument("spectral derivative order must be 1..4");
    auto s = spectrum();
    forward(in, s);
    for (std::size_t j = 0; j < modes(); ++j) {
        if ((dealias && !resolved(j)) || (order % 2 == 1 && nyquist(j))) {
            s[j] = 0.0;
            continue;
        }
        const std::complex<double> ik{0.0, wavenumber(j)};
        std::complex<double> mult = ik;
        for (int o = 1; o < order; ++o) mult *= ik;
        s[j] *= mult;
    }
    inverse(s, out);
}

} // namespace ksharp
