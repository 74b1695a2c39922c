#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace boon {

enum class Side { left, right, both };
enum class BcKind { dirichlet, neumann, periodic };

// One-sided first-derivative stencil at a boundary point. c[0] multiplies the
// boundary sample itself, c[k] the k-th sample inward; right-side stencils are
// the mirrored, sign-flipped left ones.
struct FDStencil {
    Side side = Side::left;
    int order = 2;
    double dx = 0.0;
    std::vector<double> c;

    std::size_t index(std::size_t k, std::size_t n) const {
        return side == Side::left ? k : n - 1 - k;
    }

    // derivative estimate sum_k c[k] * u[index(k)]
    double apply(const double* u, std::size_t n) const {
        if (c.size() > n)
            throw std::invalid_argument("FDStencil: stencil longer than grid");
        double acc = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
            acc += c[k] * u[index(k, n)];
        return acc;
    }
};

inline FDStencil fd_coefficients(int order, double dx, Side side) {
    if (side == Side::both)
        throw std::invalid_argument("fd_coefficients: pick one side");
    if (dx <= 0.0)
        throw std::invalid_argument("fd_coefficients: dx must be positive");
    FDStencil s;
    s.side = side;
    s.order = order;
    s.dx = dx;
    if (order == 1)
        s.c = {-1.0 / dx, 1.0 / dx};
    else if (order == 2)
        s.c = {-3.0 / (2.0 * dx), 4.0 / (2.0 * dx), -1.0 / (2.0 * dx)};
    else
        throw std::invalid_argument("fd_coefficients: order must be 1 or 2");
    if (side == Side::right)
        for (double& v : s.c)
            v = -v;
    return s;
}

} // namespace boon
