#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace ksharp {

/// Real-to-complex Fourier transforms on a periodic grid of n points and
/// length L, with the wavenumber bookkeeping needed for collocation
/// derivatives. Holds its own FFTW plans and aligned work arrays, so an
/// instance must not be shared between threads; distinct instances may be
/// used concurrently.
class SpectralOperator {
public:
    SpectralOperator(std::size_t n, double length);
    ~SpectralOperator();
    SpectralOperator(SpectralOperator&&) noexcept;
    SpectralOperator& operator=(SpectralOperator&&) noexcept;
    SpectralOperator(const SpectralOperator&) = delete;
    SpectralOperator& operator=(const SpectralOperator&) = delete;

    std::size_t size() const noexcept { return n_; }
    /// Number of stored modes, n/2 + 1.
    std::size_t modes() const noexcept { return n_ / 2 + 1; }
    /// Angular wavenumber 2 pi j / L of mode j.
    double wavenumber(std::size_t j) const noexcept { return dk_ * static_cast<double>(j); }
    /// Two-thirds rule: modes with 3 j >= n are discarded.
    bool resolved(std::size_t j) const noexcept { return 3 * j < n_; }
    bool nyquist(std::size_t j) const noexcept { return 2 * j == n_; }

    /// Unnormalized forward transform of `in` into `out` (modes() entries).
    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    /// Inverse transform including the 1/n normalization.
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

    /// Collocation derivative of the given order (1..4). Odd orders drop the
    /// Nyquist mode; with `dealias` the two-thirds rule is applied as well.
    void derivative(std::span<const double> in, int order, bool dealias, std::span<double> out);

    /// Multiplies each mode j by weight(k_j) and transforms back.
    template <class Weight>
    void filter(std::span<const double> in, const Weight& weight, std::span<double> out)
    {
        forward(in, spectrum());
        auto s = spectrum();
        for (std::size_t j = 0; j < modes(); ++j) s[j] *= weight(j, wavenumber(j));
        inverse(s, out);
    }

    /// Scratch spectrum owned by this operator.
    std::span<std::complex<double>> spectrum() noexcept;

private:
    struct Plans;
    std::size_t n_;
    double dk_;
    std::unique_ptr<Plans> plans_;
};

} // namespace ksharp
