#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace boon {

// Uniform endpoint-inclusive grid: x_i = lo + i*dx, dx = (hi-lo)/(n-1).
// Periodic problems store the duplicated endpoint explicitly, so u[0] and
// u[n-1] refer to the same physical point.
struct Grid {
    int dims = 1;
    std::array<std::size_t, 2> n{0, 1};
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};

    static Grid line(std::size_t n_points, double lo = 0.0, double hi = 1.0) {
        Grid g;
        g.dims = 1;
        g.n = {n_points, 1};
        g.lo = {lo, 0.0};
        g.hi = {hi, 1.0};
        g.validate();
        return g;
    }

    static Grid square(std::size_t nx, std::size_t ny, double lo = 0.0, double hi = 1.0) {
        Grid g;
        g.dims = 2;
        g.n = {nx, ny};
        g.lo = {lo, lo};
        g.hi = {hi, hi};
        g.validate();
        return g;
    }

    void validate() const {
        if (dims != 1 && dims != 2)
            throw std::invalid_argument("Grid: dims must be 1 or 2");
        for (int a = 0; a < dims; ++a) {
            if (n[a] < 4)
                throw std::invalid_argument("Grid: need at least 4 points per axis");
            if (!(hi[a] > lo[a]))
                throw std::invalid_argument("Grid: empty extent");
        }
    }

    std::size_t points() const { return dims == 1 ? n[0] : n[0] * n[1]; }

    double dx(int axis = 0) const {
        return (hi[axis] - lo[axis]) / static_cast<double>(n[axis] - 1);
    }

    // evaluates to hi exactly at the last index
    double coord(int axis, std::size_t i) const {
        return lo[axis] + (hi[axis] - lo[axis]) * (static_cast<double>(i) / static_cast<double>(n[axis] - 1));
    }

    // row-major flattening, x slowest
    std::size_t flat(std::size_t ix, std::size_t iy) const { return ix * n[1] + iy; }

    bool operator==(const Grid& o) const {
        return dims == o.dims && n == o.n && lo == o.lo && hi == o.hi;
    }
};

} // namespace boon
