#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "boonkit/bc/stencil.hpp"
#include "boonkit/core/kernel.hpp"

namespace boon {

// Fast-path boundary corrections. Each routine runs a fixed number of kernel
// applies (3 per Dirichlet/Neumann side pass, 4 for two-sided, 1 periodic)
// and touches only O(N) auxiliary memory; the dense transfer-matrix forms in
// bc/oracle.hpp are the reference they are tested against. Scalar boundary
// data is broadcast across channels.

struct PeriodicWeights {
    double alpha = 0.5;
    double beta = 0.5;

    void validate() const {
        if (std::abs(alpha + beta - 1.0) > 1e-12)
            throw std::invalid_argument("PeriodicWeights: alpha + beta must equal 1");
    }
};

namespace bcdetail {

// kernel response at `idx` to a unit impulse at `idx`, one probe apply
inline std::vector<double> diagonal_probe(const KernelModule& K, const Field& like, std::size_t idx) {
    Field e(like.grid, like.channels);
    for (std::size_t c = 0; c < like.channels; ++c)
        e.at(c, idx) = 1.0;
    Field r = K.apply(e);
    std::vector<double> d(like.channels);
    for (std::size_t c = 0; c < like.channels; ++c) {
        d[c] = r.at(c, idx);
        if (d[c] == 0.0)
            throw std::domain_error("boundary correction: kernel diagonal response at the boundary is zero");
    }
    return d;
}

// row surgery of the input: u[idx] <- 2 u0[idx] - z[idx]/Kdd
inline void surgery(Field& u, const Field& u0, const Field& z, const std::vector<double>& kdd, std::size_t idx) {
    for (std::size_t c = 0; c < u.channels; ++c)
        u.at(c, idx) = 2.0 * u0.at(c, idx) - z.at(c, idx) / kdd[c];
}

inline std::size_t boundary_index(Side side, std::size_t n) {
    return side == Side::left ? 0 : n - 1;
}

} // namespace bcdetail

// Dirichlet correction, one side: 3 kernel applies. The final line assigns the
// boundary value directly, which is the division-free form and stays exact
// even when u0 vanishes at the boundary.
inline Field correct_dirichlet(const KernelModule& K, const Field& u0, double alpha_t,
                               Side side = Side::left) {
    if (side == Side::both)
        throw std::invalid_argument("correct_dirichlet: use correct_dirichlet_both");
    std::size_t n = u0.points();
    std::size_t b = bcdetail::boundary_index(side, n);
    std::vector<double> kdd = bcdetail::diagonal_probe(K, u0, b); // apply 1
    Field z = K.apply(u0);                                        // apply 2
    Field u = u0;
    bcdetail::surgery(u, u0, z, kdd, b);
    u = K.apply(u);                                               // apply 3
    for (std::size_t c = 0; c < u.channels; ++c)
        u.at(c, b) = alpha_t;
    return u;
}

// Two-sided Dirichlet: left construction then its mirrored right analogue.
// The two input surgeries write disjoint entries, so their order cannot
// matter; 4 kernel applies total.
inline Field correct_dirichlet_both(const KernelModule& K, const Field& u0, double alpha_left_t,
                                    double alpha_right_t) {
    std::size_t n = u0.points();
    std::vector<double> kl = bcdetail::diagonal_probe(K, u0, 0);     // apply 1
    std::vector<double> kr = bcdetail::diagonal_probe(K, u0, n - 1); // apply 2
    Field z = K.apply(u0);                                           // apply 3
    Field u = u0;
    bcdetail::surgery(u, u0, z, kl, 0);
    bcdetail::surgery(u, u0, z, kr, n - 1);
    u = K.apply(u);                                                  // apply 4
    for (std::size_t c = 0; c < u.channels; ++c) {
        u.at(c, 0) = alpha_left_t;
        u.at(c, n - 1) = alpha_right_t;
    }
    return u;
}

// Neumann correction, one side: 3 kernel applies. The boundary entry is set so
// that the one-sided stencil reproduces alpha_t exactly in exact arithmetic.
inline Field correct_neumann(const KernelModule& K, const Field& u0, double alpha_t,
                             const FDStencil& st) {
    if (st.side == Side::both)
        throw std::invalid_argument("correct_neumann: stencil must be one-sided");
    if (st.c.empty() || st.c[0] == 0.0)
        throw std::invalid_argument("correct_neumann: stencil boundary coefficient must be nonzero");
    std::size_t n = u0.points();
    if (st.c.size() > n)
        throw std::invalid_argument("correct_neumann: stencil longer than grid");
    std::size_t b = bcdetail::boundary_index(st.side, n);
    std::vector<double> kdd = bcdetail::diagonal_probe(K, u0, b); // apply 1
    Field z = K.apply(u0);                                        // apply 2
    Field u = u0;
    bcdetail::surgery(u, u0, z, kdd, b);
    u = K.apply(u);                                               // apply 3
    for (std::size_t c = 0; c < u.channels; ++c) {
        double acc = alpha_t / st.c[0];
        for (std::size_t k = 1; k < st.c.size(); ++k)
            acc -= (st.c[k] / st.c[0]) * u.at(c, st.index(k, n));
        u.at(c, b) = acc;
    }
    return u;
}

// Two-sided Neumann, 4 kernel applies. Both assignments read only interior
// entries, so left and right stay simultaneously exact for stencils shorter
// than half the grid.
inline Field correct_neumann_both(const KernelModule& K, const Field& u0, double alpha_left_t,
                                  double alpha_right_t, const FDStencil& left, const FDStencil& right) {
    if (left.side != Side::left || right.side != Side::right)
        throw std::invalid_argument("correct_neumann_both: stencil sides mismatched");
    std::size_t n = u0.points();
    if (left.c.size() + right.c.size() > n)
        throw std::invalid_argument("correct_neumann_both: stencils overlap");
    std::vector<double> kl = bcdetail::diagonal_probe(K, u0, 0);     // apply 1
    std::vector<double> kr = bcdetail::diagonal_probe(K, u0, n - 1); // apply 2
    Field z = K.apply(u0);                                           // apply 3
    Field u = u0;
    bcdetail::surgery(u, u0, z, kl, 0);
    bcdetail::surgery(u, u0, z, kr, n - 1);
    u = K.apply(u);                                                  // apply 4
    for (std::size_t c = 0; c < u.channels; ++c) {
        double al = alpha_left_t / left.c[0];
        for (std::size_t k = 1; k < left.c.size(); ++k)
            al -= (left.c[k] / left.c[0]) * u.at(c, left.index(k, n));
        double ar = alpha_right_t / right.c[0];
        for (std::size_t k = 1; k < right.c.size(); ++k)
            ar -= (right.c[k] / right.c[0]) * u.at(c, right.index(k, n));
        u.at(c, 0) = al;
        u.at(c, n - 1) = ar;
    }
    return u;
}

// Periodic correction: 1 kernel apply; both ends receive the same stored
// weighted average, so u[0] == u[N-1] bitwise.
inline Field correct_periodic(const KernelModule& K, const Field& u0, PeriodicWeights w = {}) {
    w.validate();
    std::size_t n = u0.points();
    Field u = K.apply(u0); // apply 1
    for (std::size_t c = 0; c < u.channels; ++c) {
        double v = w.alpha * u.at(c, 0) + w.beta * u.at(c, n - 1);
        u.at(c, 0) = v;
        u.at(c, n - 1) = v;
    }
    return u;
}

// ---------------------------------------------------------------------------
// 2D extension: per-face one-dimensional corrections applied in the fixed
// face order x-lo, x-hi, y-lo, y-hi. Conflicting corner prescriptions resolve
// by last writer wins; each boundary point satisfies the BC of the last face
// that wrote it. One shared pass: per-face diagonal probes, one input-surgery
// apply, then face assignments.

struct FaceSpec {
    BcKind kind = BcKind::dirichlet;
    std::vector<double> alpha;  // boundary data along the face (size = face length), broadcast if size 1
    FDStencil stencil;          // Neumann only: along the inward normal
    PeriodicWeights weights;    // periodic only; must pair with the opposite face
};

namespace bcdetail {

struct FaceGeom {
    std::size_t len;    // points along the face
    std::size_t start;  // flat index of the first face point
    std::size_t along;  // flat stride along the face
    long inward;        // flat stride toward the interior
};

inline FaceGeom face_geom(const Grid& g, int f) {
    std::size_t nx = g.n[0], ny = g.n[1];
    switch (f) {
    case 0: return {ny, 0, 1, static_cast<long>(ny)};                            // x = lo
    case 1: return {ny, (nx - 1) * ny, 1, -static_cast<long>(ny)};               // x = hi
    case 2: return {nx, 0, ny, 1};                                               // y = lo
    default: return {nx, ny - 1, ny, -1};                                        // y = hi
    }
}

inline double face_alpha(const FaceSpec& s, std::size_t j) {
    if (s.alpha.size() == 1)
        return s.alpha[0];
    return s.alpha.at(j);
}

} // namespace bcdetail

inline Field correct_2d(const KernelModule& K, const Field& u0, const std::array<FaceSpec, 4>& faces) {
    if (u0.grid.dims != 2)
        throw std::invalid_argument("correct_2d: needs a 2D field");
    for (int f = 0; f < 4; ++f) {
        const FaceSpec& s = faces[f];
        if (s.kind == BcKind::periodic && faces[f ^ 1].kind != BcKind::periodic)
            throw std::invalid_argument("correct_2d: periodic faces must come in opposite pairs");
        if (s.kind != BcKind::periodic && s.alpha.empty())
            throw std::invalid_argument("correct_2d: missing face boundary data");
    }

    Field z = K.apply(u0);
    Field u = u0;
    // surgery pass, probes only for faces that need them
    for (int f = 0; f < 4; ++f) {
        const FaceSpec& s = faces[f];
        if (s.kind == BcKind::periodic)
            continue;
        bcdetail::FaceGeom geo = bcdetail::face_geom(u0.grid, f);
        Field e(u0.grid, u0.channels);
        for (std::size_t j = 0; j < geo.len; ++j)
            for (std::size_t c = 0; c < u0.channels; ++c)
                e.at(c, geo.start + j * geo.along) = 1.0;
        Field probe = K.apply(e);
        for (std::size_t j = 0; j < geo.len; ++j) {
            std::size_t p = geo.start + j * geo.along;
            for (std::size_t c = 0; c < u0.channels; ++c) {
                double kd = probe.at(c, p);
                if (kd == 0.0)
                    throw std::domain_error("correct_2d: face diagonal response is zero");
                u.at(c, p) = 2.0 * u0.at(c, p) - z.at(c, p) / kd;
            }
        }
    }
    u = K.apply(u);

    // assignment pass in face order; later faces own shared corners
    bool periodic_done[2] = {false, false};
    for (int f = 0; f < 4; ++f) {
        const FaceSpec& s = faces[f];
        bcdetail::FaceGeom geo = bcdetail::face_geom(u0.grid, f);
        if (s.kind == BcKind::dirichlet) {
            for (std::size_t j = 0; j < geo.len; ++j)
                for (std::size_t c = 0; c < u0.channels; ++c)
                    u.at(c, geo.start + j * geo.along) = bcdetail::face_alpha(s, j);
        } else if (s.kind == BcKind::neumann) {
            const FDStencil& st = s.stencil;
            if (st.c.empty() || st.c[0] == 0.0)
                throw std::invalid_argument("correct_2d: bad Neumann stencil");
            for (std::size_t j = 0; j < geo.len; ++j) {
                std::size_t p = geo.start + j * geo.along;
                for (std::size_t c = 0; c < u0.channels; ++c) {
                    double acc = bcdetail::face_alpha(s, j) / st.c[0];
                    for (std::size_t k = 1; k < st.c.size(); ++k)
                        acc -= (st.c[k] / st.c[0]) * u.at(c, static_cast<std::size_t>(static_cast<long>(p) + static_cast<long>(k) * geo.inward));
                    u.at(c, p) = acc;
                }
            }
        } else { // periodic pair, processed once per axis
            int axis = f / 2;
            if (periodic_done[axis])
                continue;
            periodic_done[axis] = true;
            s.weights.validate();
            bcdetail::FaceGeom lo = bcdetail::face_geom(u0.grid, axis * 2);
            bcdetail::FaceGeom hi = bcdetail::face_geom(u0.grid, axis * 2 + 1);
            for (std::size_t j = 0; j < lo.len; ++j) {
                std::size_t pl = lo.start + j * lo.along;
                std::size_t ph = hi.start + j * hi.along;
                for (std::size_t c = 0; c < u0.channels; ++c) {
                    double v = s.weights.alpha * u.at(c, pl) + s.weights.beta * u.at(c, ph);
                    u.at(c, pl) = v;
                    u.at(c, ph) = v;
                }
            }
        }
    }
    return u;
}

} // namespace boon
