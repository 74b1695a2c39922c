#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "boonkit/core/field.hpp"

namespace boon {

// Relative-L2 loss, batch mean of ||pred - target||_2 / ||target||_2 over all
// channels and points of each sample. Both norms carry a 1e-12 floor: a
// zero-norm target stays finite and the gradient at pred == target is exactly
// zero instead of 0/0.

inline double relative_l2_loss(const std::vector<Field>& pred, const std::vector<Field>& target) {
    if (pred.size() != target.size() || pred.empty())
        throw std::invalid_argument("relative_l2_loss: sample count mismatch");
    double total = 0.0;
    for (std::size_t s = 0; s < pred.size(); ++s) {
        if (pred[s].v.size() != target[s].v.size())
            throw std::invalid_argument("relative_l2_loss: shape mismatch");
        total += l2_diff(pred[s].v, target[s].v) / std::max(l2_norm(target[s].v), 1e-12);
    }
    return total / static_cast<double>(pred.size());
}

struct LossGrad {
    double value = 0.0;
    Field grad;
};

inline LossGrad relative_l2_loss_grad(const Field& pred, const Field& target) {
    if (pred.v.size() != target.v.size() || !(pred.grid == target.grid))
        throw std::invalid_argument("relative_l2_loss_grad: shape mismatch");
    LossGrad out;
    out.grad = Field(pred.grid, pred.channels);
    const double den = std::max(l2_norm(target.v), 1e-12);
    const double diff = l2_diff(pred.v, target.v);
    out.value = diff / den;
    const double scale = 1.0 / (std::max(diff, 1e-12) * den);
    for (std::size_t i = 0; i < pred.v.size(); ++i)
        out.grad.v[i] = scale * (pred.v[i] - target.v[i]);
    return out;
}

} // namespace boon
