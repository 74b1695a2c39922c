#pragma once

// Trainable spectral operator with hard boundary wiring. Forward pipeline:
// lift (sample value + coordinate -> C channels), four spectral layers with
// GeLU between, pointwise two-layer MLP down to the output channels, optional
// mollifier window, then a per-output-channel boundary assignment with the
// true boundary data. Each corrected layer reuses the probe / input-surgery /
// assign structure of bc/correct.hpp, all internal kernel applies sharing the
// layer's spectral weights; hidden layers propagate the layer input's own
// boundary trace (value for Dirichlet, one-sided derivative for Neumann,
// end averaging for periodic), so boundary exactness never depends on the
// weights. model_backward is the hand-derived exact adjoint of the forward
// pass; finite-difference tests pin every parameter group.
//
// Parameters live in one flat float64 vector. Spectral weights are stored as
// (re, im) pairs in the layout of core/spectral_ops.hpp; nothing in the
// parameter block depends on the grid resolution, so a trained model
// evaluates at any resolution with at least twice its mode count.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "boonkit/bc/metrics.hpp"
#include "boonkit/bc/stencil.hpp"
#include "boonkit/core/field.hpp"
#include "boonkit/core/rng.hpp"
#include "boonkit/core/spectral_ops.hpp"
#include "boonkit/nn/activation.hpp"

namespace boon {

// Mode and channel counts by problem dimensionality (space plus time):
// single-step 1D, multi-step 1D, and 2D-space problems respectively.
struct OperatorDefaults {
    std::size_t modes;
    std::size_t channels;
};

inline OperatorDefaults operator_defaults(std::size_t dims_with_time) {
    switch (dims_with_time) {
    case 1: return {16, 64};
    case 2: return {12, 32};
    case 3: return {8, 20};
    default: throw std::invalid_argument("operator_defaults: dims must be 1, 2, or 3");
    }
}

struct OperatorShape {
    std::size_t modes = 16;
    std::size_t channels = 64;
    std::size_t out_channels = 1;

    static constexpr std::size_t n_layers = 4;
    static constexpr std::size_t raw_channels = 2; // sample values, grid coordinates

    void validate() const {
        if (modes == 0 || channels == 0 || out_channels == 0)
            throw std::invalid_argument("OperatorShape: zero extent");
    }

    std::size_t spec_complex() const { return modes * channels * channels; }
    std::size_t layer_stride() const { return 2 * spec_complex() + channels * channels + channels; }

    std::size_t lift_w_off() const { return 0; }
    std::size_t lift_w_count() const { return channels * raw_channels; }
    std::size_t lift_b_off() const { return lift_w_count(); }
    std::size_t layer_off(std::size_t t) const { return lift_w_count() + channels + t * layer_stride(); }
    std::size_t layer_w_off(std::size_t t) const { return layer_off(t) + 2 * spec_complex(); }
    std::size_t layer_b_off(std::size_t t) const { return layer_w_off(t) + channels * channels; }
    std::size_t proj_w1_off() const { return layer_off(n_layers); }
    std::size_t proj_b1_off() const { return proj_w1_off() + channels * channels; }
    std::size_t proj_w2_off() const { return proj_b1_off() + channels; }
    std::size_t proj_b2_off() const { return proj_w2_off() + out_channels * channels; }
    std::size_t total() const { return proj_b2_off() + out_channels; }
};

struct ParamGroup {
    std::string name;
    std::size_t offset;
    std::size_t count;
};

struct OperatorParams {
    OperatorShape shape;
    BoundarySpec bc;
    bool correction = true; // false = baseline arm, plain spectral layers
    bool mollifier = false;
    std::vector<double> theta;

    // Spectral weights uniform on [0, 1/C^2) per component, pointwise maps
    // Kaiming-style gaussians, biases zero. One fixed draw order.
    static OperatorParams create(OperatorShape sh, BoundarySpec bc, std::uint64_t seed,
                                 bool correction = true, bool mollifier = false) {
        sh.validate();
        OperatorParams p;
        p.shape = sh;
        p.bc = bc;
        p.correction = correction;
        p.mollifier = mollifier;
        p.theta.assign(sh.total(), 0.0);
        Rng rng(seed);
        const std::size_t c = sh.channels;
        double s = std::sqrt(2.0 / static_cast<double>(OperatorShape::raw_channels));
        for (std::size_t i = 0; i < sh.lift_w_count(); ++i)
            p.theta[sh.lift_w_off() + i] = s * rng.gaussian();
        const double wscale = 1.0 / (static_cast<double>(c) * static_cast<double>(c));
        s = std::sqrt(2.0 / static_cast<double>(c));
        for (std::size_t t = 0; t < OperatorShape::n_layers; ++t) {
            for (std::size_t i = 0; i < 2 * sh.spec_complex(); ++i)
                p.theta[sh.layer_off(t) + i] = wscale * rng.uniform01();
            for (std::size_t i = 0; i < c * c; ++i)
                p.theta[sh.layer_w_off(t) + i] = s * rng.gaussian();
        }
        for (std::size_t i = 0; i < c * c; ++i)
            p.theta[sh.proj_w1_off() + i] = s * rng.gaussian();
        for (std::size_t i = 0; i < sh.out_channels * c; ++i)
            p.theta[sh.proj_w2_off() + i] = s * rng.gaussian();
        return p;
    }

    std::vector<ParamGroup> groups() const {
        std::vector<ParamGroup> g;
        g.push_back({"lift.w", shape.lift_w_off(), shape.lift_w_count()});
        g.push_back({"lift.b", shape.lift_b_off(), shape.channels});
        for (std::size_t t = 0; t < OperatorShape::n_layers; ++t) {
            const std::string p = "layer" + std::to_string(t);
            g.push_back({p + ".spectral", shape.layer_off(t), 2 * shape.spec_complex()});
            g.push_back({p + ".w", shape.layer_w_off(t), shape.channels * shape.channels});
            g.push_back({p + ".b", shape.layer_b_off(t), shape.channels});
        }
        g.push_back({"project.w1", shape.proj_w1_off(), shape.channels * shape.channels});
        g.push_back({"project.b1", shape.proj_b1_off(), shape.channels});
        g.push_back({"project.w2", shape.proj_w2_off(), shape.out_channels * shape.channels});
        g.push_back({"project.b2", shape.proj_b2_off(), shape.out_channels});
        return g;
    }

    void validate() const {
        shape.validate();
        if (theta.size() != shape.total())
            throw std::invalid_argument("OperatorParams: parameter count disagrees with the shape");
        for (double x : theta)
            if (!std::isfinite(x))
                throw std::invalid_argument("OperatorParams: non-finite parameter");
        if (bc.kind == BcKind::periodic)
            bc.weights.validate();
        else if (bc.kind == BcKind::neumann && bc.stencil_order != 1 && bc.stencil_order != 2)
            throw std::invalid_argument("OperatorParams: unsupported stencil order");
    }
};

// Per-output-channel boundary data for the final assignment: Dirichlet values
// or Neumann fluxes, one entry per output time channel on each active side.
// Periodic needs none.
struct BoundaryData {
    std::vector<double> left;
    std::vector<double> right;
};

inline bool side_active_left(const BoundarySpec& bc) { return bc.side != Side::right; }
inline bool side_active_right(const BoundarySpec& bc) { return bc.side != Side::left; }

// Reads the boundary data a sample's target stack implies: the trace for
// Dirichlet, the one-sided stencil derivative for Neumann.
inline BoundaryData boundary_data_from_target(const Field& target, const BoundarySpec& bc) {
    if (target.grid.dims != 1)
        throw std::invalid_argument("boundary_data_from_target: 1D targets only");
    BoundaryData bd;
    if (bc.kind == BcKind::periodic)
        return bd;
    const std::size_t n = target.points();
    if (bc.kind == BcKind::dirichlet) {
        if (side_active_left(bc)) {
            bd.left.resize(target.channels);
            for (std::size_t j = 0; j < target.channels; ++j)
                bd.left[j] = target.at(j, 0);
        }
        if (side_active_right(bc)) {
            bd.right.resize(target.channels);
            for (std::size_t j = 0; j < target.channels; ++j)
                bd.right[j] = target.at(j, n - 1);
        }
    } else {
        if (side_active_left(bc)) {
            FDStencil st = fd_coefficients(bc.stencil_order, target.grid.dx(0), Side::left);
            bd.left.resize(target.channels);
            for (std::size_t j = 0; j < target.channels; ++j)
                bd.left[j] = st.apply(target.channel(j), n);
        }
        if (side_active_right(bc)) {
            FDStencil st = fd_coefficients(bc.stencil_order, target.grid.dx(0), Side::right);
            bd.right.resize(target.channels);
            for (std::size_t j = 0; j < target.channels; ++j)
                bd.right[j] = st.apply(target.channel(j), n);
        }
    }
    return bd;
}

// Smooth window that vanishes at both ends of the unit interval, normalized
// to 1 at the midpoint. s is the normalized grid fraction.
inline double mollifier_window(double s, double tau = 1e-3) {
    if (s <= 0.0 || s >= 1.0)
        return 0.0;
    return std::exp(4.0 * tau - tau / (s * (1.0 - s)));
}

// Everything the backward pass needs from one layer's forward evaluation.
struct LayerTape {
    std::vector<cdouble> wk;      // complex view of this layer's spectral weights
    Field v;                      // layer input
    std::vector<cdouble> xhat_v;  // input spectrum bins (modes x C)
    std::vector<cdouble> xhat_vt; // spectrum bins of the surgered input
    std::vector<double> kdd_left, zb_left;
    std::vector<double> kdd_right, zb_right;
    Field h;                      // pre-activation output, assignment applied
    std::size_t applies = 0;      // spectral kernel applies this evaluation made
};

struct ModelTape {
    Field raw;    // raw_channels x n: sample values, coordinates
    std::array<LayerTape, OperatorShape::n_layers> layer;
    Field pin;    // projection input, GeLU of the last layer output
    Field p1_pre; // projection hidden pre-activation
    Field p1;
    Field out;    // final model output
};

namespace nndetail {

// y[co][i] (+)= sum_ci w[co*cin+ci] x[ci][i] + b[co]
inline void affine_forward(const double* w, const double* b, std::size_t cin, std::size_t cout,
                           std::size_t n, const double* x, double* y, bool accumulate) {
    for (std::size_t co = 0; co < cout; ++co) {
        double* yo = y + co * n;
        if (!accumulate) {
            const double bias = b ? b[co] : 0.0;
            for (std::size_t i = 0; i < n; ++i)
                yo[i] = bias;
        } else if (b) {
            for (std::size_t i = 0; i < n; ++i)
                yo[i] += b[co];
        }
        for (std::size_t ci = 0; ci < cin; ++ci) {
            const double wv = w[co * cin + ci];
            const double* xi = x + ci * n;
            for (std::size_t i = 0; i < n; ++i)
                yo[i] += wv * xi[i];
        }
    }
}

inline void affine_backward(const double* w, std::size_t cin, std::size_t cout, std::size_t n,
                            const double* x, const double* g_y, double* g_x_accum, double* g_w,
                            double* g_b) {
    for (std::size_t co = 0; co < cout; ++co) {
        const double* gy = g_y + co * n;
        if (g_b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += gy[i];
            g_b[co] += acc;
        }
        for (std::size_t ci = 0; ci < cin; ++ci) {
            const double* xi = x + ci * n;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += gy[i] * xi[i];
            g_w[co * cin + ci] += acc;
        }
    }
    if (g_x_accum)
        for (std::size_t ci = 0; ci < cin; ++ci) {
            double* gx = g_x_accum + ci * n;
            for (std::size_t co = 0; co < cout; ++co) {
                const double wv = w[co * cin + ci];
                const double* gy = g_y + co * n;
                for (std::size_t i = 0; i < n; ++i)
                    gx[i] += wv * gy[i];
            }
        }
}

// One spectral apply on the layer's shared weights; the probe measures the
// per-channel diagonal response at index b to a simultaneous unit impulse in
// every channel, matching bc/correct.hpp.
inline void probe_diagonal(const LayerTape& T, std::size_t c, std::size_t modes, std::size_t n,
                           std::size_t b, std::vector<double>& kdd, std::size_t& applies) {
    Field e(T.v.grid, c);
    for (std::size_t ci = 0; ci < c; ++ci)
        e.at(ci, b) = 1.0;
    Field r(T.v.grid, c);
    spectral_forward(T.wk.data(), modes, c, c, n, e.v.data(), r.v.data());
    ++applies;
    kdd.resize(c);
    for (std::size_t ci = 0; ci < c; ++ci) {
        kdd[ci] = r.at(ci, b);
        if (kdd[ci] == 0.0)
            throw std::domain_error("boon_layer_forward: kernel diagonal response at the boundary is zero");
    }
}

inline void layer_forward(const OperatorShape& sh, const BoundarySpec& bc, bool correction,
                          const double* pw, const double* pb, const Field& v, LayerTape& T) {
    const std::size_t c = sh.channels;
    const std::size_t n = v.points();
    T.v = v;
    T.applies = 0;
    T.h = Field(v.grid, c);

    if (!correction || bc.kind == BcKind::periodic) {
        spectral_forward(T.wk.data(), sh.modes, c, c, n, v.v.data(), T.h.v.data(), &T.xhat_v);
        T.applies = 1;
        affine_forward(pw, pb, c, c, n, v.v.data(), T.h.v.data(), true);
        if (correction) { // periodic: both ends receive the same stored average
            for (std::size_t ci = 0; ci < c; ++ci) {
                const double val = bc.weights.alpha * T.h.at(ci, 0) + bc.weights.beta * T.h.at(ci, n - 1);
                T.h.at(ci, 0) = val;
                T.h.at(ci, n - 1) = val;
            }
        }
        return;
    }

    // Dirichlet/Neumann: probe each active side, one apply of the input,
    // boundary surgery, one apply of the surgered input.
    const bool left = side_active_left(bc);
    const bool right = side_active_right(bc);
    if (left)
        probe_diagonal(T, c, sh.modes, n, 0, T.kdd_left, T.applies);
    if (right)
        probe_diagonal(T, c, sh.modes, n, n - 1, T.kdd_right, T.applies);

    Field z(v.grid, c);
    spectral_forward(T.wk.data(), sh.modes, c, c, n, v.v.data(), z.v.data(), &T.xhat_v);
    ++T.applies;

    Field vt = v;
    if (left) {
        T.zb_left.resize(c);
        for (std::size_t ci = 0; ci < c; ++ci) {
            T.zb_left[ci] = z.at(ci, 0);
            vt.at(ci, 0) = 2.0 * v.at(ci, 0) - z.at(ci, 0) / T.kdd_left[ci];
        }
    }
    if (right) {
        T.zb_right.resize(c);
        for (std::size_t ci = 0; ci < c; ++ci) {
            T.zb_right[ci] = z.at(ci, n - 1);
            vt.at(ci, n - 1) = 2.0 * v.at(ci, n - 1) - z.at(ci, n - 1) / T.kdd_right[ci];
        }
    }

    spectral_forward(T.wk.data(), sh.modes, c, c, n, vt.v.data(), T.h.v.data(), &T.xhat_vt);
    ++T.applies;
    affine_forward(pw, pb, c, c, n, v.v.data(), T.h.v.data(), true);

    // Layer-level assignment: propagate the input's boundary trace.
    if (bc.kind == BcKind::dirichlet) {
        for (std::size_t ci = 0; ci < c; ++ci) {
            if (left)
                T.h.at(ci, 0) = v.at(ci, 0);
            if (right)
                T.h.at(ci, n - 1) = v.at(ci, n - 1);
        }
    } else {
        FDStencil stl, str;
        if (left)
            stl = fd_coefficients(bc.stencil_order, v.grid.dx(0), Side::left);
        if (right)
            str = fd_coefficients(bc.stencil_order, v.grid.dx(0), Side::right);
        if (left && right && stl.c.size() + str.c.size() > n)
            throw std::invalid_argument("boon_layer_forward: stencils overlap");
        for (std::size_t ci = 0; ci < c; ++ci) {
            double al = 0.0, ar = 0.0;
            if (left) {
                al = stl.apply(T.v.channel(ci), n) / stl.c[0];
                for (std::size_t k = 1; k < stl.c.size(); ++k)
                    al -= (stl.c[k] / stl.c[0]) * T.h.at(ci, stl.index(k, n));
            }
            if (right) {
                ar = str.apply(T.v.channel(ci), n) / str.c[0];
                for (std::size_t k = 1; k < str.c.size(); ++k)
                    ar -= (str.c[k] / str.c[0]) * T.h.at(ci, str.index(k, n));
            }
            if (left)
                T.h.at(ci, 0) = al;
            if (right)
                T.h.at(ci, n - 1) = ar;
        }
    }
}

// Reverse of layer_forward. g_h is the gradient at the layer output and is
// clobbered; the gradient at the layer input lands in g_v (accumulated).
inline void layer_backward(const OperatorShape& sh, const BoundarySpec& bc, bool correction,
                           const LayerTape& T, const double* pw, std::vector<double>& g_h,
                           std::vector<double>& g_v, cdouble* g_wk, double* g_pw, double* g_pb) {
    const std::size_t c = sh.channels;
    const std::size_t n = T.v.points();

    if (!correction || bc.kind == BcKind::periodic) {
        if (correction) {
            for (std::size_t ci = 0; ci < c; ++ci) {
                const double s = g_h[ci * n] + g_h[ci * n + n - 1];
                g_h[ci * n] = bc.weights.alpha * s;
                g_h[ci * n + n - 1] = bc.weights.beta * s;
            }
        }
        affine_backward(pw, c, c, n, T.v.v.data(), g_h.data(), g_v.data(), g_pw, g_pb);
        std::vector<cdouble> ghat;
        spectral_adjoint(T.wk.data(), sh.modes, c, c, n, g_h.data(), g_v.data(), &ghat);
        spectral_weight_grad(sh.modes, c, c, n, T.xhat_v.data(), ghat.data(), g_wk);
        return;
    }

    const bool left = side_active_left(bc);
    const bool right = side_active_right(bc);

    // assignment backward: reroute the overwritten boundary entries
    if (bc.kind == BcKind::dirichlet) {
        for (std::size_t ci = 0; ci < c; ++ci) {
            if (left) {
                g_v[ci * n] += g_h[ci * n];
                g_h[ci * n] = 0.0;
            }
            if (right) {
                g_v[ci * n + n - 1] += g_h[ci * n + n - 1];
                g_h[ci * n + n - 1] = 0.0;
            }
        }
    } else {
        FDStencil stl, str;
        if (left)
            stl = fd_coefficients(bc.stencil_order, T.v.grid.dx(0), Side::left);
        if (right)
            str = fd_coefficients(bc.stencil_order, T.v.grid.dx(0), Side::right);
        for (std::size_t ci = 0; ci < c; ++ci) {
            if (left) {
                const double s = g_h[ci * n];
                for (std::size_t k = 0; k < stl.c.size(); ++k)
                    g_v[ci * n + stl.index(k, n)] += s * stl.c[k] / stl.c[0];
                for (std::size_t k = 1; k < stl.c.size(); ++k)
                    g_h[ci * n + stl.index(k, n)] -= s * stl.c[k] / stl.c[0];
                g_h[ci * n] = 0.0;
            }
            if (right) {
                const double s = g_h[ci * n + n - 1];
                for (std::size_t k = 0; k < str.c.size(); ++k)
                    g_v[ci * n + str.index(k, n)] += s * str.c[k] / str.c[0];
                for (std::size_t k = 1; k < str.c.size(); ++k)
                    g_h[ci * n + str.index(k, n)] -= s * str.c[k] / str.c[0];
                g_h[ci * n + n - 1] = 0.0;
            }
        }
    }

    // residual path
    affine_backward(pw, c, c, n, T.v.v.data(), g_h.data(), g_v.data(), g_pw, g_pb);

    // main apply: adjoint into the surgered input, weight gradient from its spectrum
    std::vector<double> g_vt(c * n, 0.0);
    std::vector<cdouble> ghat;
    spectral_adjoint(T.wk.data(), sh.modes, c, c, n, g_h.data(), g_vt.data(), &ghat);
    spectral_weight_grad(sh.modes, c, c, n, T.xhat_vt.data(), ghat.data(), g_wk);

    // surgery: vt[b] = 2 v[b] - zb/kdd, identity elsewhere
    std::vector<double> gz_left(left ? c : 0, 0.0), gz_right(right ? c : 0, 0.0);
    std::vector<double> gk_left(left ? c : 0, 0.0), gk_right(right ? c : 0, 0.0);
    for (std::size_t ci = 0; ci < c; ++ci) {
        for (std::size_t i = 0; i < n; ++i) {
            const bool lb = left && i == 0;
            const bool rb = right && i == n - 1;
            if (lb) {
                const double s = g_vt[ci * n];
                g_v[ci * n] += 2.0 * s;
                gz_left[ci] = -s / T.kdd_left[ci];
                gk_left[ci] = s * T.zb_left[ci] / (T.kdd_left[ci] * T.kdd_left[ci]);
            } else if (rb) {
                const double s = g_vt[ci * n + n - 1];
                g_v[ci * n + n - 1] += 2.0 * s;
                gz_right[ci] = -s / T.kdd_right[ci];
                gk_right[ci] = s * T.zb_right[ci] / (T.kdd_right[ci] * T.kdd_right[ci]);
            } else {
                g_v[ci * n + i] += g_vt[ci * n + i];
            }
        }
    }

    // z apply: the surgery reads z only at the boundary entries, so the
    // output gradient is an impulse whose spectrum is a phase ramp.
    std::vector<cdouble> ghat_z(sh.modes * c, cdouble(0.0, 0.0));
    if (left) {
        std::vector<cdouble> ph = delta_spectrum(n, 0, sh.modes);
        for (std::size_t k = 0; k < sh.modes; ++k)
            for (std::size_t ci = 0; ci < c; ++ci)
                ghat_z[k * c + ci] += gz_left[ci] * ph[k];
    }
    if (right) {
        std::vector<cdouble> ph = delta_spectrum(n, n - 1, sh.modes);
        for (std::size_t k = 0; k < sh.modes; ++k)
            for (std::size_t ci = 0; ci < c; ++ci)
                ghat_z[k * c + ci] += gz_right[ci] * ph[k];
    }
    spectral_adjoint_spectrum(T.wk.data(), sh.modes, c, c, n, ghat_z.data(), g_v.data());
    spectral_weight_grad(sh.modes, c, c, n, T.xhat_v.data(), ghat_z.data(), g_wk);

    // probes: constant unit-impulse inputs, gradient reaches only the weights
    auto probe_grad = [&](std::size_t b, const std::vector<double>& gk) {
        std::vector<cdouble> ph = delta_spectrum(n, b, sh.modes);
        std::vector<cdouble> xh(sh.modes * c), gh(sh.modes * c);
        for (std::size_t k = 0; k < sh.modes; ++k)
            for (std::size_t ci = 0; ci < c; ++ci) {
                xh[k * c + ci] = ph[k];
                gh[k * c + ci] = gk[ci] * ph[k];
            }
        spectral_weight_grad(sh.modes, c, c, n, xh.data(), gh.data(), g_wk);
    };
    if (left)
        probe_grad(0, gk_left);
    if (right)
        probe_grad(n - 1, gk_right);
}

inline void complex_view(const double* pairs, std::size_t count, std::vector<cdouble>& out) {
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = cdouble(pairs[2 * i], pairs[2 * i + 1]);
}

} // namespace nndetail

// One spectral layer with the boundary wiring of the model. Returns the
// pre-activation output; the assignment holds exactly on it.
inline Field boon_layer_forward(const OperatorParams& P, std::size_t layer, const Field& v_in,
                                LayerTape* tape = nullptr) {
    P.validate();
    if (layer >= OperatorShape::n_layers)
        throw std::invalid_argument("boon_layer_forward: layer index out of range");
    if (v_in.grid.dims != 1 || v_in.channels != P.shape.channels)
        throw std::invalid_argument("boon_layer_forward: input shape mismatch");
    LayerTape local;
    LayerTape& T = tape ? *tape : local;
    nndetail::complex_view(P.theta.data() + P.shape.layer_off(layer), P.shape.spec_complex(), T.wk);
    nndetail::layer_forward(P.shape, P.bc, P.correction, P.theta.data() + P.shape.layer_w_off(layer),
                            P.theta.data() + P.shape.layer_b_off(layer), v_in, T);
    return T.h;
}

inline Field model_forward(const OperatorParams& P, const Field& u0, const BoundaryData& bd,
                           ModelTape* tape = nullptr) {
    P.validate();
    if (u0.grid.dims != 1 || u0.channels != 1)
        throw std::invalid_argument("model_forward: input must be a single-channel 1D field");
    const std::size_t n = u0.points();
    if (n < 2 * P.shape.modes)
        throw std::invalid_argument("model_forward: resolution below twice the mode count");
    if (!u0.finite())
        throw std::invalid_argument("model_forward: non-finite input");
    const std::size_t c = P.shape.channels;
    const std::size_t m = P.shape.out_channels;
    if (P.correction && P.bc.kind != BcKind::periodic) {
        if (side_active_left(P.bc) && bd.left.size() != m)
            throw std::invalid_argument("model_forward: left boundary data size mismatch");
        if (side_active_right(P.bc) && bd.right.size() != m)
            throw std::invalid_argument("model_forward: right boundary data size mismatch");
    }

    ModelTape local;
    ModelTape& T = tape ? *tape : local;
    const OperatorShape& sh = P.shape;

    T.raw = Field(u0.grid, OperatorShape::raw_channels);
    for (std::size_t i = 0; i < n; ++i) {
        T.raw.at(0, i) = u0.v[i];
        T.raw.at(1, i) = u0.grid.coord(0, i);
    }

    Field v(u0.grid, c);
    nndetail::affine_forward(P.theta.data() + sh.lift_w_off(), P.theta.data() + sh.lift_b_off(),
                             OperatorShape::raw_channels, c, n, T.raw.v.data(), v.v.data(), false);

    for (std::size_t t = 0; t < OperatorShape::n_layers; ++t) {
        LayerTape& L = T.layer[t];
        nndetail::complex_view(P.theta.data() + sh.layer_off(t), sh.spec_complex(), L.wk);
        nndetail::layer_forward(sh, P.bc, P.correction, P.theta.data() + sh.layer_w_off(t),
                                P.theta.data() + sh.layer_b_off(t), v, L);
        if (!L.h.finite())
            throw std::runtime_error("model_forward: non-finite activations in layer " + std::to_string(t));
        v = Field(u0.grid, c);
        for (std::size_t i = 0; i < c * n; ++i)
            v.v[i] = gelu(L.h.v[i]);
    }
    T.pin = v;

    T.p1_pre = Field(u0.grid, c);
    nndetail::affine_forward(P.theta.data() + sh.proj_w1_off(), P.theta.data() + sh.proj_b1_off(), c,
                             c, n, T.pin.v.data(), T.p1_pre.v.data(), false);
    T.p1 = Field(u0.grid, c);
    for (std::size_t i = 0; i < c * n; ++i)
        T.p1.v[i] = gelu(T.p1_pre.v[i]);

    Field q(u0.grid, m);
    nndetail::affine_forward(P.theta.data() + sh.proj_w2_off(), P.theta.data() + sh.proj_b2_off(), c,
                             m, n, T.p1.v.data(), q.v.data(), false);

    if (P.mollifier)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i)
                q.at(j, i) *= mollifier_window(static_cast<double>(i) / static_cast<double>(n - 1));

    if (P.correction) {
        if (P.bc.kind == BcKind::dirichlet) {
            for (std::size_t j = 0; j < m; ++j) {
                if (side_active_left(P.bc))
                    q.at(j, 0) = bd.left[j];
                if (side_active_right(P.bc))
                    q.at(j, n - 1) = bd.right[j];
            }
        } else if (P.bc.kind == BcKind::neumann) {
            const bool left = side_active_left(P.bc);
            const bool right = side_active_right(P.bc);
            FDStencil stl, str;
            if (left)
                stl = fd_coefficients(P.bc.stencil_order, u0.grid.dx(0), Side::left);
            if (right)
                str = fd_coefficients(P.bc.stencil_order, u0.grid.dx(0), Side::right);
            for (std::size_t j = 0; j < m; ++j) {
                double al = 0.0, ar = 0.0;
                if (left) {
                    al = bd.left[j] / stl.c[0];
                    for (std::size_t k = 1; k < stl.c.size(); ++k)
                        al -= (stl.c[k] / stl.c[0]) * q.at(j, stl.index(k, n));
                }
                if (right) {
                    ar = bd.right[j] / str.c[0];
                    for (std::size_t k = 1; k < str.c.size(); ++k)
                        ar -= (str.c[k] / str.c[0]) * q.at(j, str.index(k, n));
                }
                if (left)
                    q.at(j, 0) = al;
                if (right)
                    q.at(j, n - 1) = ar;
            }
        } else {
            for (std::size_t j = 0; j < m; ++j) {
                const double val = P.bc.weights.alpha * q.at(j, 0) + P.bc.weights.beta * q.at(j, n - 1);
                q.at(j, 0) = val;
                q.at(j, n - 1) = val;
            }
        }
    }

    T.out = q;
    return q;
}

// Exact reverse-mode gradient of the recorded forward pass with respect to
// every parameter. g_out is the loss gradient at the model output.
inline std::vector<double> model_backward(const OperatorParams& P, const ModelTape& T,
                                          const Field& g_out) {
    P.validate();
    const OperatorShape& sh = P.shape;
    const std::size_t n = T.raw.points();
    const std::size_t c = sh.channels;
    const std::size_t m = sh.out_channels;
    if (g_out.points() != n || g_out.channels != m)
        throw std::invalid_argument("model_backward: output gradient shape mismatch");

    std::vector<double> grad(sh.total(), 0.0);
    std::vector<double> gq = g_out.v;

    if (P.correction) {
        if (P.bc.kind == BcKind::dirichlet) {
            for (std::size_t j = 0; j < m; ++j) {
                if (side_active_left(P.bc))
                    gq[j * n] = 0.0;
                if (side_active_right(P.bc))
                    gq[j * n + n - 1] = 0.0;
            }
        } else if (P.bc.kind == BcKind::neumann) {
            const bool left = side_active_left(P.bc);
            const bool right = side_active_right(P.bc);
            FDStencil stl, str;
            if (left)
                stl = fd_coefficients(P.bc.stencil_order, T.raw.grid.dx(0), Side::left);
            if (right)
                str = fd_coefficients(P.bc.stencil_order, T.raw.grid.dx(0), Side::right);
            for (std::size_t j = 0; j < m; ++j) {
                if (left) {
                    const double s = gq[j * n];
                    for (std::size_t k = 1; k < stl.c.size(); ++k)
                        gq[j * n + stl.index(k, n)] -= s * stl.c[k] / stl.c[0];
                    gq[j * n] = 0.0;
                }
                if (right) {
                    const double s = gq[j * n + n - 1];
                    for (std::size_t k = 1; k < str.c.size(); ++k)
                        gq[j * n + str.index(k, n)] -= s * str.c[k] / str.c[0];
                    gq[j * n + n - 1] = 0.0;
                }
            }
        } else {
            for (std::size_t j = 0; j < m; ++j) {
                const double s = gq[j * n] + gq[j * n + n - 1];
                gq[j * n] = P.bc.weights.alpha * s;
                gq[j * n + n - 1] = P.bc.weights.beta * s;
            }
        }
    }

    if (P.mollifier)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i)
                gq[j * n + i] *= mollifier_window(static_cast<double>(i) / static_cast<double>(n - 1));

    std::vector<double> g_p1(c * n, 0.0);
    nndetail::affine_backward(P.theta.data() + sh.proj_w2_off(), c, m, n, T.p1.v.data(), gq.data(),
                              g_p1.data(), grad.data() + sh.proj_w2_off(),
                              grad.data() + sh.proj_b2_off());
    for (std::size_t i = 0; i < c * n; ++i)
        g_p1[i] *= gelu_prime(T.p1_pre.v[i]);
    std::vector<double> g_pin(c * n, 0.0);
    nndetail::affine_backward(P.theta.data() + sh.proj_w1_off(), c, c, n, T.pin.v.data(),
                              g_p1.data(), g_pin.data(), grad.data() + sh.proj_w1_off(),
                              grad.data() + sh.proj_b1_off());

    // into the layer stack: g_pin is the gradient at gelu(h3)
    std::vector<double> g_h(c * n);
    for (std::size_t i = 0; i < c * n; ++i)
        g_h[i] = g_pin[i] * gelu_prime(T.layer[3].h.v[i]);

    std::vector<cdouble> g_wk(sh.spec_complex());
    for (std::size_t t = OperatorShape::n_layers; t-- > 0;) {
        const LayerTape& L = T.layer[t];
        for (double x : g_h)
            if (!std::isfinite(x))
                throw std::runtime_error("model_backward: non-finite gradient entering layer " + std::to_string(t));
        std::vector<double> g_v(c * n, 0.0);
        std::fill(g_wk.begin(), g_wk.end(), cdouble(0.0, 0.0));
        nndetail::layer_backward(sh, P.bc, P.correction, L, P.theta.data() + sh.layer_w_off(t), g_h,
                                 g_v, g_wk.data(), grad.data() + sh.layer_w_off(t),
                                 grad.data() + sh.layer_b_off(t));
        double* gw_pairs = grad.data() + sh.layer_off(t);
        for (std::size_t i = 0; i < sh.spec_complex(); ++i) {
            gw_pairs[2 * i] += g_wk[i].real();
            gw_pairs[2 * i + 1] += g_wk[i].imag();
        }
        for (double x : g_v)
            if (!std::isfinite(x))
                throw std::runtime_error("model_backward: non-finite gradient leaving layer " + std::to_string(t));
        if (t == 0) {
            nndetail::affine_backward(P.theta.data() + sh.lift_w_off(), OperatorShape::raw_channels,
                                      c, n, T.raw.v.data(), g_v.data(), nullptr,
                                      grad.data() + sh.lift_w_off(), grad.data() + sh.lift_b_off());
        } else {
            for (std::size_t i = 0; i < c * n; ++i)
                g_h[i] = g_v[i] * gelu_prime(T.layer[t - 1].h.v[i]);
        }
    }
    return grad;
}

} // namespace boon
