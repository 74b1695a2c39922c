#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "boonkit/core/fft.hpp"

namespace boon {

// Truncated Fourier multiplier on channel-major data. Weight layout is
// w[(k*c_in + ci)*c_out + co]: one dense complex c_in x c_out matrix per
// retained mode k < modes. The action per output channel is
//   y_co = irfft_N( sum_ci w[k,ci,co] * rfft(x_ci)[k]  for k < modes, 0 above ).
// With the irfft convention of fft.hpp this is a real-linear map; the
// imaginary parts of the bin-0 (and Nyquist) products never reach the output,
// so the matching weight components carry zero gradient.

inline double mode_weight(std::size_t k, std::size_t n) {
    if (k == 0)
        return 1.0;
    if (n % 2 == 0 && k == n / 2)
        return 1.0;
    return 2.0;
}

// spectrum of a unit impulse at grid index j: X_k = exp(-2*pi*i*k*j/N)
inline std::vector<cdouble> delta_spectrum(std::size_t n, std::size_t j, std::size_t modes) {
    std::vector<cdouble> s(modes);
    for (std::size_t k = 0; k < modes; ++k) {
        double a = -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n);
        s[k] = cdouble(std::cos(a), std::sin(a));
    }
    return s;
}

// y (c_out x n) = multiplier applied to x (c_in x n). If xhat_keep is given it
// receives the first `modes` input bins, layout xhat[k*c_in + ci].
inline void spectral_forward(const cdouble* w, std::size_t modes, std::size_t c_in,
                             std::size_t c_out, std::size_t n, const double* x, double* y,
                             std::vector<cdouble>* xhat_keep = nullptr) {
    std::size_t bins = rfft_bins(n);
    if (modes == 0 || modes > bins)
        throw std::invalid_argument("spectral_forward: modes out of range");
    std::vector<cdouble> yhat(modes * c_out, cdouble(0.0, 0.0));
    if (xhat_keep)
        xhat_keep->assign(modes * c_in, cdouble(0.0, 0.0));
    std::vector<double> xi(n);
    for (std::size_t ci = 0; ci < c_in; ++ci) {
        xi.assign(x + ci * n, x + (ci + 1) * n);
        std::vector<cdouble> xh = rfft(xi);
        for (std::size_t k = 0; k < modes; ++k) {
            cdouble xk = xh[k];
            if (xhat_keep)
                (*xhat_keep)[k * c_in + ci] = xk;
            const cdouble* wk = w + (k * c_in + ci) * c_out;
            cdouble* yk = yhat.data() + k * c_out;
            for (std::size_t co = 0; co < c_out; ++co)
                yk[co] += wk[co] * xk;
        }
    }
    std::vector<cdouble> cvec(bins, cdouble(0.0, 0.0));
    for (std::size_t co = 0; co < c_out; ++co) {
        for (std::size_t k = 0; k < bins; ++k)
            cvec[k] = (k < modes) ? yhat[k * c_out + co] : cdouble(0.0, 0.0);
        std::vector<double> yo = irfft(cvec, n);
        for (std::size_t i = 0; i < n; ++i)
            y[co * n + i] = yo[i];
    }
}

// g_in (c_in x n) += adjoint of the multiplier applied to the spectrum ghat
// (modes x c_out). Adjoint weights are the conjugate transpose per mode.
inline void spectral_adjoint_spectrum(const cdouble* w, std::size_t modes, std::size_t c_in,
                                      std::size_t c_out, std::size_t n, const cdouble* ghat,
                                      double* g_in_accum) {
    std::size_t bins = rfft_bins(n);
    std::vector<cdouble> hhat(modes * c_in, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < modes; ++k)
        for (std::size_t ci = 0; ci < c_in; ++ci) {
            const cdouble* wk = w + (k * c_in + ci) * c_out;
            cdouble acc(0.0, 0.0);
            for (std::size_t co = 0; co < c_out; ++co)
                acc += std::conj(wk[co]) * ghat[k * c_out + co];
            hhat[k * c_in + ci] = acc;
        }
    std::vector<cdouble> cvec(bins, cdouble(0.0, 0.0));
    for (std::size_t ci = 0; ci < c_in; ++ci) {
        for (std::size_t k = 0; k < bins; ++k)
            cvec[k] = (k < modes) ? hhat[k * c_in + ci] : cdouble(0.0, 0.0);
        std::vector<double> gi = irfft(cvec, n);
        for (std::size_t i = 0; i < n; ++i)
            g_in_accum[ci * n + i] += gi[i];
    }
}

// g_in += K^T g_out for real fields; ghat_keep receives rfft(g_out) bins
// (modes x c_out) for reuse in the weight gradient.
inline void spectral_adjoint(const cdouble* w, std::size_t modes, std::size_t c_in,
                             std::size_t c_out, std::size_t n, const double* g_out,
                             double* g_in_accum, std::vector<cdouble>* ghat_keep = nullptr) {
    std::vector<cdouble> ghat(modes * c_out, cdouble(0.0, 0.0));
    std::vector<double> gc(n);
    for (std::size_t co = 0; co < c_out; ++co) {
        gc.assign(g_out + co * n, g_out + (co + 1) * n);
        std::vector<cdouble> gh = rfft(gc);
        for (std::size_t k = 0; k < modes; ++k)
            ghat[k * c_out + co] = gh[k];
    }
    spectral_adjoint_spectrum(w, modes, c_in, c_out, n, ghat.data(), g_in_accum);
    if (ghat_keep)
        *ghat_keep = std::move(ghat);
}

// gw[k,ci,co] += (mode_weight(k)/N) * conj(xhat[k,ci]) * ghat[k,co]
inline void spectral_weight_grad(std::size_t modes, std::size_t c_in, std::size_t c_out,
                                 std::size_t n, const cdouble* xhat, const cdouble* ghat,
                                 cdouble* gw_accum) {
    double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < modes; ++k) {
        double f = mode_weight(k, n) * inv_n;
        for (std::size_t ci = 0; ci < c_in; ++ci) {
            cdouble xc = std::conj(xhat[k * c_in + ci]) * f;
            cdouble* gk = gw_accum + (k * c_in + ci) * c_out;
            const cdouble* gh = ghat + k * c_out;
            for (std::size_t co = 0; co < c_out; ++co)
                gk[co] += xc * gh[co];
        }
    }
}

} // namespace boon
