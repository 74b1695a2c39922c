#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace boon {

using cdouble = std::complex<double>;

// Transform conventions used throughout:
//   forward:  X_k = sum_n x_n exp(-2*pi*i*k*n/N)   (unnormalized)
//   inverse:  x_n = (1/N) sum_k X_k exp(+2*pi*i*k*n/N)
// Power-of-two sizes run on an iterative radix-2 kernel; every other size is
// handled natively through Bluestein's chirp-z reduction to a power of two.

namespace fftdetail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

struct Pow2Plan {
    std::size_t n = 0;
    std::vector<cdouble> w; // w[k] = exp(-2*pi*i*k/n), k < n/2
};

inline const Pow2Plan& pow2_plan(std::size_t n) {
    thread_local std::map<std::size_t, Pow2Plan> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        Pow2Plan p;
        p.n = n;
        p.w.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double a = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            p.w[k] = cdouble(std::cos(a), std::sin(a));
        }
        it = cache.emplace(n, std::move(p)).first;
    }
    return it->second;
}

// in-place radix-2, unnormalized; inverse uses conjugated twiddles
inline void fft_pow2(cdouble* a, std::size_t n, bool inverse) {
    if (n <= 1)
        return;
    const Pow2Plan& plan = pow2_plan(n);
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cdouble w = plan.w[k * stride];
                if (inverse)
                    w = std::conj(w);
                cdouble u = a[i + k];
                cdouble t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
            }
        }
    }
}

struct BluesteinPlan {
    std::size_t n = 0;
    std::size_t m = 0;            // power-of-two convolution size, >= 2n-1
    std::vector<cdouble> chirp;   // chirp[k] = exp(-i*pi*k^2/n), forward sign
    std::vector<cdouble> bhat;    // FFT of the conjugate-chirp kernel
};

inline const BluesteinPlan& bluestein_plan(std::size_t n, bool inverse) {
    thread_local std::map<std::pair<std::size_t, bool>, BluesteinPlan> cache;
    auto key = std::make_pair(n, inverse);
    auto it = cache.find(key);
    if (it == cache.end()) {
        BluesteinPlan p;
        p.n = n;
        p.m = next_pow2(2 * n - 1);
        p.chirp.resize(n);
        // phase uses k^2 mod 2n so the trig argument stays in [0, 2*pi)
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % (2 * n);
            double a = std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
            if (!inverse)
                a = -a;
            p.chirp[k] = cdouble(std::cos(a), std::sin(a));
        }
        std::vector<cdouble> b(p.m, cdouble(0.0, 0.0));
        b[0] = std::conj(p.chirp[0]);
        for (std::size_t k = 1; k < n; ++k) {
            b[k] = std::conj(p.chirp[k]);
            b[p.m - k] = std::conj(p.chirp[k]);
        }
        fft_pow2(b.data(), p.m, false);
        p.bhat = std::move(b);
        it = cache.emplace(key, std::move(p)).first;
    }
    return it->second;
}

inline void fft_bluestein(cdouble* x, std::size_t n, bool inverse) {
    const BluesteinPlan& p = bluestein_plan(n, inverse);
    std::vector<cdouble> a(p.m, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        a[k] = x[k] * p.chirp[k];
    fft_pow2(a.data(), p.m, false);
    for (std::size_t k = 0; k < p.m; ++k)
        a[k] *= p.bhat[k];
    fft_pow2(a.data(), p.m, true);
    double scale = 1.0 / static_cast<double>(p.m); // fft_pow2 inverse is unnormalized
    for (std::size_t k = 0; k < n; ++k)
        x[k] = a[k] * scale * p.chirp[k];
}

} // namespace fftdetail

// unnormalized complex DFT of arbitrary size, in place
inline void fft(std::vector<cdouble>& a, bool inverse = false) {
    if (a.empty())
        throw std::invalid_argument("fft: empty input");
    if (fftdetail::is_pow2(a.size()))
        fftdetail::fft_pow2(a.data(), a.size(), inverse);
    else
        fftdetail::fft_bluestein(a.data(), a.size(), inverse);
}

inline std::size_t rfft_bins(std::size_t n) { return n / 2 + 1; }

// forward transform of a real signal; returns bins 0..floor(N/2), unnormalized
inline std::vector<cdouble> rfft(const std::vector<double>& x) {
    if (x.size() < 2)
        throw std::invalid_argument("rfft: need at least 2 samples");
    for (double v : x)
        if (!std::isfinite(v))
            throw std::invalid_argument("rfft: non-finite input");
    std::vector<cdouble> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        a[i] = cdouble(x[i], 0.0);
    fft(a, false);
    a.resize(rfft_bins(x.size()));
    return a;
}

// Inverse of rfft with the 1/N factor. The Hermitian extension forces bins 0
// and N/2 (even N) to be real; imaginary parts supplied there are ignored,
// which is the documented symmetrization policy for asymmetric input.
inline std::vector<double> irfft(const std::vector<cdouble>& c, std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("irfft: output length must be >= 2");
    if (c.size() != rfft_bins(n))
        throw std::invalid_argument("irfft: expected floor(N/2)+1 bins");
    for (const cdouble& z : c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("irfft: non-finite input");
    std::vector<cdouble> a(n);
    a[0] = cdouble(c[0].real(), 0.0);
    bool even = (n % 2 == 0);
    std::size_t half = n / 2;
    for (std::size_t k = 1; k < c.size(); ++k) {
        cdouble z = c[k];
        if (even && k == half)
            z = cdouble(z.real(), 0.0);
        a[k] = z;
        a[n - k] = std::conj(z);
    }
    fft(a, true);
    std::vector<double> out(n);
    double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i].real() * scale;
    return out;
}

} // namespace boon
