#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "boonkit/core/field.hpp"
#include "boonkit/core/kernel.hpp"
#include "boonkit/core/rng.hpp"

namespace testutil {

// O(N^2) direct DFT, the independent reference for the fast transform
inline std::vector<std::complex<double>> direct_dft(const std::vector<std::complex<double>>& x,
                                                    bool inverse = false) {
    std::size_t n = x.size();
    std::vector<std::complex<double>> out(n, {0.0, 0.0});
    double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double a = sign * 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(a), std::sin(a));
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<double> random_vec(boon::Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v)
        x = rng.uniform(lo, hi);
    return v;
}

// materialize any KernelModule as a dense matrix by probing with impulses
inline std::vector<double> materialize(const boon::KernelModule& k, const boon::Grid& g) {
    std::size_t n = g.points();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        boon::Field e(g, 1);
        e.v[j] = 1.0;
        boon::Field col = k.apply(e);
        for (std::size_t i = 0; i < n; ++i)
            m[i * n + j] = col.v[i];
    }
    return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double rel_l2(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        double d = got[i] - want[i];
        num += d * d;
        den += want[i] * want[i];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

} // namespace testutil
