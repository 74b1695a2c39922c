#pragma once

// Type-II cosine transform and its inverse, built on the complex FFT via the
// even length-2n extension. Conventions:
//   dct2:  C_k = sum_{m<n} x_m cos(pi k (2m+1) / (2n)),        k = 0..n-1
//   idct2: x_m = (1/n) sum_k w_k C_k cos(pi k (2m+1) / (2n)),  w_0=1, w_k=2
// idct2(dct2(x)) == x. This basis diagonalizes the cell-centered Laplacian
// with mirrored ghost cells, which is what the pressure solve needs.

#include <numbers>
#include <vector>

#include "boonkit/core/fft.hpp"

namespace boon {

inline std::vector<double> dct2(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0)
        throw std::invalid_argument("dct2: empty input");
    std::vector<cdouble> y(2 * n);
    for (std::size_t m = 0; m < n; ++m) {
        y[m] = cdouble(x[m], 0.0);
        y[2 * n - 1 - m] = cdouble(x[m], 0.0);
    }
    fft(y, false);
    std::vector<double> c(n);
    const double step = std::numbers::pi / (2.0 * static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble rot(std::cos(step * static_cast<double>(k)),
                          -std::sin(step * static_cast<double>(k)));
        c[k] = 0.5 * (rot * y[k]).real();
    }
    return c;
}

inline std::vector<double> idct2(const std::vector<double>& c) {
    const std::size_t n = c.size();
    if (n == 0)
        throw std::invalid_argument("idct2: empty input");
    std::vector<cdouble> v(2 * n, cdouble(0.0, 0.0));
    const double step = std::numbers::pi / (2.0 * static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (k == 0) ? 1.0 : 2.0;
        v[k] = w * c[k] *
               cdouble(std::cos(step * static_cast<double>(k)),
                       std::sin(step * static_cast<double>(k)));
    }
    fft(v, true); // unnormalized inverse: supplies the plain sum
    std::vector<double> x(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m)
        x[m] = v[m].real() * scale;
    return x;
}

} // namespace boon
