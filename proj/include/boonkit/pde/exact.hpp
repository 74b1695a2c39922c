#pragma once

// Closed-form reference solutions used to build datasets. Each function is a
// pointwise evaluator; dataset assembly lives in dataset.hpp.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace boon {

// Oscillating-plate flow: u(y,t) = U e^{-ky} cos(ky - omega t), k = sqrt(omega/(2 nu)).
// Satisfies u_t = nu u_yy with u(0,t) = U cos(omega t).
inline double stokes_exact(double y, double t, double U, double omega, double nu) {
    if (!(nu > 0.0))
        throw std::invalid_argument("stokes_exact: nu must be positive");
    const double k = std::sqrt(omega / (2.0 * nu));
    return U * std::exp(-k * y) * std::cos(k * y - omega * t);
}

// Viscous traveling front for u_t + (u^2/2)_x = nu u_xx with step initial data
// centered at x = 0.5. Front speed s = (uL + uR) / 2.
inline double burgers_riemann_exact(double x, double t, double uL, double uR, double nu) {
    if (!(nu > 0.0))
        throw std::invalid_argument("burgers_riemann_exact: nu must be positive");
    const double s = 0.5 * (uL + uR);
    const double arg = (x - 0.5 - s * t) * (uL - uR) / (4.0 * nu);
    return 0.5 * (uL + uR) - 0.5 * (uL - uR) * std::tanh(arg);
}

namespace pdedetail {

// Cosine-series coefficient of cos(omega pi x) on [0,1] for mode n >= 1.
// The omega == n resonance collapses the two sinc terms to exactly 1.
inline double heat_coefficient(double omega, std::size_t n) {
    const double pi = std::numbers::pi;
    const double dn = static_cast<double>(n);
    if (std::abs(omega - dn) <= 1e-12)
        return 1.0;
    const double p = (omega + dn) * pi;
    const double q = (omega - dn) * pi;
    return std::sin(p) / p + std::sin(q) / q;
}

} // namespace pdedetail

// Term count for heat_exact: smallest n with |a_n e^{-k(n pi)^2 t}| < 1e-14,
// capped at 1e4. The series only converges conditionally at t = 0 (the decay
// factor is 1), so there a fixed 2000-term cutoff applies; residual error at
// t = 0 is Gibbs-level near x = 0, not below the interior tolerance.
inline std::size_t heat_terms(double k, double omega, double t_min) {
    if (t_min <= 0.0)
        return 2000;
    const double pi = std::numbers::pi;
    for (std::size_t n = 1; n < 10000; ++n) {
        const double dn = static_cast<double>(n);
        const double term =
            std::abs(pdedetail::heat_coefficient(omega, n)) * std::exp(-k * dn * pi * dn * pi * t_min);
        if (term < 1e-14)
            return n;
    }
    return 10000;
}

// Forced heat equation u_t = k u_xx + f, f = U pi x^2/2 cos(pi t), with
// u_x(0,t) = 0, u_x(1,t) = U sin(pi t), u(x,0) = cos(omega pi x):
//   u = U x^2/2 sin(pi t) - (U k / pi)(cos(pi t) - 1) + sin(omega pi)/(omega pi)
//       + sum_n a_n cos(n pi x) e^{-k (n pi)^2 t}.
inline double heat_exact(double x, double t, double k, double U, double omega,
                         std::size_t n_terms) {
    if (n_terms < 1)
        throw std::invalid_argument("heat_exact: n_terms must be >= 1");
    const double pi = std::numbers::pi;
    double value = U * x * x * 0.5 * std::sin(pi * t) - (U * k / pi) * (std::cos(pi * t) - 1.0) +
                   std::sin(omega * pi) / (omega * pi);
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const double dn = static_cast<double>(n);
        value += pdedetail::heat_coefficient(omega, n) * std::cos(dn * pi * x) *
                 std::exp(-k * dn * pi * dn * pi * t);
    }
    return value;
}

// Standing membrane mode: u = k cos(pi x) cos(pi y) cos(c sqrt(2) pi t).
// All four faces carry zero normal derivative.
inline double wave_exact(double x, double y, double t, double c, double k) {
    const double pi = std::numbers::pi;
    return k * std::cos(pi * x) * std::cos(pi * y) *
           std::cos(c * std::numbers::sqrt2 * pi * t);
}

} // namespace boon
