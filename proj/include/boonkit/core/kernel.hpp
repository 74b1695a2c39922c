#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "boonkit/core/field.hpp"
#include "boonkit/core/rng.hpp"
#include "boonkit/core/spectral_ops.hpp"

namespace boon {

// Linear map on fields, y = K x over the grid points. apply() never mutates
// its input and bumps a monotone call counter; the counter is atomic so that
// read-only modules may be shared across data workers.
class KernelModule {
public:
    virtual ~KernelModule() = default;

    Field apply(const Field& x) const {
        if (x.points() != size_)
            throw std::invalid_argument("KernelModule: field size mismatch");
        if (!x.finite())
            throw std::invalid_argument("KernelModule: non-finite input");
        calls_.fetch_add(1, std::memory_order_relaxed);
        return do_apply(x);
    }

    std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
    std::size_t size() const { return size_; }

protected:
    explicit KernelModule(std::size_t size) : size_(size) {}

private:
    virtual Field do_apply(const Field& x) const = 0;

    std::size_t size_;
    mutable std::atomic<std::uint64_t> calls_{0};
};

// Explicit N x N matrix, applied independently to each channel. This is the
// reference module the dense boundary oracles are stated against.
class DenseKernel : public KernelModule {
public:
    DenseKernel(Grid grid, std::vector<double> matrix)
        : KernelModule(grid.points()), grid_(std::move(grid)), m_(std::move(matrix)) {
        std::size_t n = size();
        if (m_.size() != n * n)
            throw std::invalid_argument("DenseKernel: matrix must be N x N");
        for (double x : m_)
            if (!std::isfinite(x))
                throw std::invalid_argument("DenseKernel: non-finite entry");
    }

    static DenseKernel random(const Grid& grid, Rng& rng, double scale = 1.0) {
        std::size_t n = grid.points();
        std::vector<double> m(n * n);
        for (double& x : m)
            x = rng.uniform(-scale, scale);
        return DenseKernel(grid, std::move(m));
    }

    const std::vector<double>& matrix() const { return m_; }
    double entry(std::size_t i, std::size_t j) const { return m_[i * size() + j]; }
    const Grid& grid() const { return grid_; }

private:
    Field do_apply(const Field& x) const override {
        std::size_t n = size();
        Field y(x.grid, x.channels);
        for (std::size_t c = 0; c < x.channels; ++c) {
            const double* xc = x.channel(c);
            double* yc = y.channel(c);
            for (std::size_t i = 0; i < n; ++i) {
                const double* row = m_.data() + i * n;
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += row[j] * xc[j];
                yc[i] = acc;
            }
        }
        return y;
    }

    Grid grid_;
    std::vector<double> m_;
};

// Truncated Fourier multiplier module (1D grids). Matrix-free: O(N log N)
// per apply and O(N) working memory, never an N x N buffer.
class SpectralKernel : public KernelModule {
public:
    SpectralKernel(Grid grid, std::size_t modes, std::size_t c_in, std::size_t c_out)
        : KernelModule(grid.points()), grid_(std::move(grid)), modes_(modes), c_in_(c_in), c_out_(c_out),
          w_(modes * c_in * c_out, cdouble(0.0, 0.0)) {
        if (grid_.dims != 1)
            throw std::invalid_argument("SpectralKernel: 1D grids only");
        if (modes_ == 0 || modes_ > rfft_bins(size()))
            throw std::invalid_argument("SpectralKernel: modes out of range");
        if (c_in_ == 0 || c_out_ == 0)
            throw std::invalid_argument("SpectralKernel: zero channels");
    }

    // FNO-style init: Re and Im uniform on [0, 1/(c_in*c_out))
    void init_random(Rng& rng) {
        double scale = 1.0 / (static_cast<double>(c_in_) * static_cast<double>(c_out_));
        for (cdouble& z : w_)
            z = cdouble(scale * rng.uniform01(), scale * rng.uniform01());
    }

    std::vector<cdouble>& weights() { return w_; }
    const std::vector<cdouble>& weights() const { return w_; }
    std::size_t modes() const { return modes_; }
    std::size_t c_in() const { return c_in_; }
    std::size_t c_out() const { return c_out_; }
    const Grid& grid() const { return grid_; }

private:
    Field do_apply(const Field& x) const override {
        if (x.channels != c_in_)
            throw std::invalid_argument("SpectralKernel: channel mismatch");
        Field y(x.grid, c_out_);
        spectral_forward(w_.data(), modes_, c_in_, c_out_, size(), x.v.data(), y.v.data());
        return y;
    }

    Grid grid_;
    std::size_t modes_, c_in_, c_out_;
    std::vector<cdouble> w_;
};

} // namespace boon
