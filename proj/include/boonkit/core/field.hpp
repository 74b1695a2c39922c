#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "boonkit/core/grid.hpp"

namespace boon {

// Multichannel grid function, channel-major storage: v[c*points + p] where
// p is the row-major flat point index of the grid.
struct Field {
    Grid grid;
    std::size_t channels = 1;
    std::vector<double> v;

    Field() = default;

    Field(const Grid& g, std::size_t c) : grid(g), channels(c), v(g.points() * c, 0.0) {
        if (c == 0)
            throw std::invalid_argument("Field: zero channels");
    }

    static Field zeros(const Grid& g, std::size_t c = 1) { return Field(g, c); }

    std::size_t points() const { return grid.points(); }

    double& at(std::size_t c, std::size_t p) { return v[c * points() + p]; }
    double at(std::size_t c, std::size_t p) const { return v[c * points() + p]; }

    double* channel(std::size_t c) { return v.data() + c * points(); }
    const double* channel(std::size_t c) const { return v.data() + c * points(); }

    bool finite() const {
        for (double x : v)
            if (!std::isfinite(x))
                return false;
        return true;
    }
};

inline double l2_norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a)
        s += x * x;
    return std::sqrt(s);
}

inline double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace boon
