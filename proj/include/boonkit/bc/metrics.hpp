#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "boonkit/bc/correct.hpp"
#include "boonkit/bc/stencil.hpp"

namespace boon {

// Problem-level boundary description used by the metric, the operator wiring
// and the harness. Per-sample boundary data itself travels separately (it is
// read off the sample's own boundary trace).
struct BoundarySpec {
    BcKind kind = BcKind::dirichlet;
    Side side = Side::both;    // Dirichlet/Neumann
    int stencil_order = 2;     // Neumann
    PeriodicWeights weights{}; // periodic
};

namespace bcdetail {

// boundary points with their owning inward stride, corner ownership matching
// the fixed face order of correct_2d (later faces own shared corners)
struct BoundaryPoint {
    std::size_t p;
    long inward;
};

inline std::vector<BoundaryPoint> boundary_points(const Grid& g, Side side) {
    std::vector<BoundaryPoint> pts;
    if (g.dims == 1) {
        if (side == Side::left || side == Side::both)
            pts.push_back({0, 1});
        if (side == Side::right || side == Side::both)
            pts.push_back({g.n[0] - 1, -1});
        return pts;
    }
    std::size_t nx = g.n[0], ny = g.n[1];
    // interior of the x faces, then full y faces (owners of the corners)
    for (std::size_t j = 1; j + 1 < ny; ++j)
        pts.push_back({g.flat(0, j), static_cast<long>(ny)});
    for (std::size_t j = 1; j + 1 < ny; ++j)
        pts.push_back({g.flat(nx - 1, j), -static_cast<long>(ny)});
    for (std::size_t i = 0; i < nx; ++i)
        pts.push_back({g.flat(i, 0), 1});
    for (std::size_t i = 0; i < nx; ++i)
        pts.push_back({g.flat(i, ny - 1), -1});
    return pts;
}

} // namespace bcdetail

// Mean over samples of the l2 norm, over boundary points and output channels,
// of the discrete boundary operator applied to pred - target. The boundary
// data cancels in the difference: Dirichlet reduces to the trace difference,
// Neumann to the stencil difference, periodic to the end-jump difference.
inline double boundary_error(const std::vector<Field>& pred, const std::vector<Field>& target,
                             const BoundarySpec& bc) {
    if (pred.size() != target.size() || pred.empty())
        throw std::invalid_argument("boundary_error: sample count mismatch");
    double total = 0.0;
    for (std::size_t s = 0; s < pred.size(); ++s) {
        const Field& p = pred[s];
        const Field& t = target[s];
        if (!(p.grid == t.grid) || p.channels != t.channels)
            throw std::invalid_argument("boundary_error: shape mismatch");
        std::size_t n = p.points();
        double acc = 0.0;
        if (bc.kind == BcKind::dirichlet) {
            for (const auto& bp : bcdetail::boundary_points(p.grid, bc.side))
                for (std::size_t c = 0; c < p.channels; ++c) {
                    double d = p.at(c, bp.p) - t.at(c, bp.p);
                    acc += d * d;
                }
        } else if (bc.kind == BcKind::neumann) {
            if (p.grid.dims == 1) {
                if (bc.side == Side::left || bc.side == Side::both) {
                    FDStencil st = fd_coefficients(bc.stencil_order, p.grid.dx(0), Side::left);
                    for (std::size_t c = 0; c < p.channels; ++c) {
                        double d = st.apply(p.channel(c), n) - st.apply(t.channel(c), n);
                        acc += d * d;
                    }
                }
                if (bc.side == Side::right || bc.side == Side::both) {
                    FDStencil st = fd_coefficients(bc.stencil_order, p.grid.dx(0), Side::right);
                    for (std::size_t c = 0; c < p.channels; ++c) {
                        double d = st.apply(p.channel(c), n) - st.apply(t.channel(c), n);
                        acc += d * d;
                    }
                }
            } else {
                for (const auto& bp : bcdetail::boundary_points(p.grid, Side::both)) {
                    int axis = std::abs(bp.inward) > 1 ? 0 : 1;
                    FDStencil st = fd_coefficients(bc.stencil_order, p.grid.dx(axis), Side::left);
                    for (std::size_t c = 0; c < p.channels; ++c) {
                        double d = 0.0;
                        for (std::size_t k = 0; k < st.c.size(); ++k) {
                            std::size_t q = static_cast<std::size_t>(static_cast<long>(bp.p) + static_cast<long>(k) * bp.inward);
                            d += st.c[k] * (p.at(c, q) - t.at(c, q));
                        }
                        acc += d * d;
                    }
                }
            }
        } else { // periodic
            for (std::size_t c = 0; c < p.channels; ++c) {
                double d = (p.at(c, 0) - p.at(c, n - 1)) - (t.at(c, 0) - t.at(c, n - 1));
                acc += d * d;
            }
        }
        total += std::sqrt(acc);
    }
    return total / static_cast<double>(pred.size());
}

} // namespace boon
