#pragma once

#include <cmath>
#include <numbers>

namespace boon {

// Exact Gaussian-CDF GeLU, not the tanh approximation: the closed-form
// derivative below is then the true derivative, which keeps finite-difference
// gradient checks clean at 1e-5 tolerances.
inline double gelu(double x) {
    return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2));
}

inline double gelu_prime(double x) {
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    const double cdf = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2));
    return cdf + x * phi;
}

} // namespace boon
