#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace boon {

// Bias-corrected Adam with the standard moment defaults. The step counter
// lives in the state so checkpoints resume mid-schedule.
struct AdamState {
    std::vector<double> m, v;
    std::uint64_t t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    AdamState() = default;
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

inline void adam_step(std::vector<double>& theta, const std::vector<double>& grad, AdamState& st,
                      double lr) {
    if (theta.size() != grad.size() || theta.size() != st.m.size() || st.m.size() != st.v.size())
        throw std::invalid_argument("adam_step: size mismatch");
    st.t += 1;
    const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.t));
    const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.t));
    for (std::size_t i = 0; i < theta.size(); ++i) {
        st.m[i] = st.beta1 * st.m[i] + (1.0 - st.beta1) * grad[i];
        st.v[i] = st.beta2 * st.v[i] + (1.0 - st.beta2) * grad[i] * grad[i];
        const double mhat = st.m[i] / bc1;
        const double vhat = st.v[i] / bc2;
        theta[i] -= lr * mhat / (std::sqrt(vhat) + st.eps);
    }
}

// Step schedule: the rate halves (by `factor`) every `interval` epochs.
inline double lr_at_epoch(double lr0, std::size_t epoch, std::size_t interval, double factor = 0.5) {
    if (interval == 0)
        throw std::invalid_argument("lr_at_epoch: zero interval");
    return lr0 * std::pow(factor, static_cast<double>(epoch / interval));
}

} // namespace boon
