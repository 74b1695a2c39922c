#pragma once

// Periodic Gaussian random fields sampled in Fourier space. The covariance is
// 625 (-Laplacian + 25 I)^{-2} on [0,1] with periodic wrap, so each real
// orthonormal mode (constant, sqrt(2) cos(2 pi k x), sqrt(2) sin(2 pi k x))
// carries standard deviation 25 (4 pi^2 k^2 + 25)^{-1}.

#include <cstdint>
#include <numbers>
#include <vector>

#include "boonkit/core/fft.hpp"
#include "boonkit/core/field.hpp"
#include "boonkit/core/rng.hpp"

namespace boon {

inline double grf_mode_std(std::size_t k) {
    const double two_pi_k = 2.0 * std::numbers::pi * static_cast<double>(k);
    return 25.0 / (two_pi_k * two_pi_k + 25.0);
}

// One sample on an endpoint-duplicated periodic grid: u[0] and u[n-1] are the
// same physical point, so the spectrum lives on the n-1 unique points. Draw
// order is fixed (two gaussians per bin, ascending k) so a seed pins the bytes.
inline Field grf_sample(const Grid& grid, std::uint64_t seed, std::uint64_t stream = 0) {
    grid.validate();
    if (grid.dims != 1)
        throw std::invalid_argument("grf_sample: expected a 1D grid");
    const std::size_t n = grid.n[0] - 1;
    Rng rng(seed, stream);

    const std::size_t bins = rfft_bins(n);
    std::vector<cdouble> spectrum(bins, cdouble(0.0, 0.0));
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        const bool self_conjugate = (k == 0) || (n % 2 == 0 && k == n / 2);
        if (self_conjugate) {
            // Real mode with unit discrete mean-square: amplitude n * std.
            spectrum[k] = cdouble(dn * grf_mode_std(k) * re, 0.0);
        } else {
            // irfft weights this bin by 2/n; cos/sin each need std * sqrt(2).
            const double amp = 0.5 * dn * std::numbers::sqrt2 * grf_mode_std(k);
            spectrum[k] = cdouble(amp * re, -amp * im);
        }
    }

    std::vector<double> unique = irfft(spectrum, n);
    Field out(grid, 1);
    for (std::size_t i = 0; i < n; ++i)
        out.v[i] = unique[i];
    out.v[n] = out.v[0];
    return out;
}

} // namespace boon
