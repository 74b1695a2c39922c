#pragma once

#include <stdexcept>
#include <vector>

#include "boonkit/bc/correct.hpp"

namespace boon {

// Dense transfer-matrix forms of the boundary corrections, K_bdy = T1 * K * T2,
// materialized as explicit N x N matrices. They are the arbiter the O(N) fast
// paths are verified against: interior rows must agree to round-off, boundary
// rows encode beta = alpha(t)/alpha(0) scaling (Dirichlet) or the stencil
// combination (Neumann). When the time-zero boundary trace vanishes no matrix
// row can represent the assignment; beta is set to 0 (never a division by
// zero) and only the fast path keeps the boundary exact.

namespace bcdetail {

inline double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

inline void check_square(const std::vector<double>& k, std::size_t n) {
    if (k.size() != n * n)
        throw std::invalid_argument("dense oracle: matrix must be N x N");
}

} // namespace bcdetail

// Lemma form, Dirichlet on one side. beta = alpha_t / u0_b with u0_b the
// input's boundary value (equal to alpha at time zero by the BC premise).
inline std::vector<double> dense_dirichlet(const std::vector<double>& k, std::size_t n,
                                           double alpha_t, double u0_b, Side side = Side::left) {
    bcdetail::check_square(k, n);
    std::size_t b = side == Side::left ? 0 : n - 1;
    double kbb = k[b * n + b];
    if (kbb == 0.0)
        throw std::domain_error("dense_dirichlet: K_bb = 0");
    double beta = bcdetail::safe_ratio(alpha_t, u0_b);
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == b) {
            out[i * n + b] = beta;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (j == b)
                out[i * n + j] = k[i * n + b];
            else
                out[i * n + j] = k[i * n + j] - k[i * n + b] * k[b * n + j] / kbb;
        }
    }
    return out;
}

// Two-sided Dirichlet: both row surgeries applied to the same base kernel
// (they touch disjoint rows of T2, so the order is immaterial), boundary rows
// assigned per side.
inline std::vector<double> dense_dirichlet_both(const std::vector<double>& k, std::size_t n,
                                                double alpha_l, double u0_l,
                                                double alpha_r, double u0_r) {
    bcdetail::check_square(k, n);
    double k00 = k[0], knn = k[(n - 1) * n + (n - 1)];
    if (k00 == 0.0 || knn == 0.0)
        throw std::domain_error("dense_dirichlet_both: boundary diagonal is zero");
    std::vector<double> out(n * n, 0.0);
    out[0] = bcdetail::safe_ratio(alpha_l, u0_l);
    out[(n - 1) * n + (n - 1)] = bcdetail::safe_ratio(alpha_r, u0_r);
    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = k[i * n + j];
            if (j != 0)
                v -= k[i * n + 0] * k[0 * n + j] / k00;
            if (j != n - 1)
                v -= k[i * n + (n - 1)] * k[(n - 1) * n + j] / knn;
            out[i * n + j] = v;
        }
    return out;
}

// Lemma form, Neumann on one side; the boundary row combines beta with the
// negated stencil weights, interior rows match the Dirichlet update.
inline std::vector<double> dense_neumann(const std::vector<double>& k, std::size_t n,
                                         double alpha_t, double u0_b, const FDStencil& st) {
    bcdetail::check_square(k, n);
    if (st.side == Side::both)
        throw std::invalid_argument("dense_neumann: stencil must be one-sided");
    if (st.c.empty() || st.c[0] == 0.0)
        throw std::invalid_argument("dense_neumann: c0 must be nonzero");
    std::size_t b = st.side == Side::left ? 0 : n - 1;
    double kbb = k[b * n + b];
    if (kbb == 0.0)
        throw std::domain_error("dense_neumann: K_bb = 0");
    double c0 = st.c[0];
    double beta = bcdetail::safe_ratio(alpha_t, c0 * u0_b);

    // K * T2 first (row surgery on the input side)
    std::vector<double> kt2 = k;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != b)
                kt2[i * n + j] = k[i * n + j] - k[i * n + b] * k[b * n + j] / kbb;

    std::vector<double> out = kt2;
    // boundary row: (beta/K_bb) * row_b - sum_{m>0} (c_m/c0) * row_{index(m)}
    for (std::size_t j = 0; j < n; ++j) {
        double v = (beta / kbb) * kt2[b * n + j];
        for (std::size_t m = 1; m < st.c.size(); ++m)
            v -= (st.c[m] / c0) * kt2[st.index(m, n) * n + j];
        out[b * n + j] = v;
    }
    return out;
}

inline std::vector<double> dense_neumann_both(const std::vector<double>& k, std::size_t n,
                                              double alpha_l, double u0_l, const FDStencil& left,
                                              double alpha_r, double u0_r, const FDStencil& right) {
    bcdetail::check_square(k, n);
    if (left.side != Side::left || right.side != Side::right)
        throw std::invalid_argument("dense_neumann_both: stencil sides mismatched");
    if (left.c.empty() || left.c[0] == 0.0 || right.c.empty() || right.c[0] == 0.0)
        throw std::invalid_argument("dense_neumann_both: c0 must be nonzero");
    double k00 = k[0], knn = k[(n - 1) * n + (n - 1)];
    if (k00 == 0.0 || knn == 0.0)
        throw std::domain_error("dense_neumann_both: boundary diagonal is zero");
    double bl = bcdetail::safe_ratio(alpha_l, left.c[0] * u0_l);
    double br = bcdetail::safe_ratio(alpha_r, right.c[0] * u0_r);

    std::vector<double> kt2 = k;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = k[i * n + j];
            if (j != 0)
                v -= k[i * n + 0] * k[0 * n + j] / k00;
            if (j != n - 1)
                v -= k[i * n + (n - 1)] * k[(n - 1) * n + j] / knn;
            kt2[i * n + j] = v;
        }

    // With both surgeries active the row-b identity (K T2)[b] = K_bb e_b no
    // longer holds, so the boundary rows take the equivalent direct form
    // beta*e_b minus the stencil combination of interior rows.
    std::vector<double> out = kt2;
    for (std::size_t j = 0; j < n; ++j) {
        double vl = (j == 0) ? bl : 0.0;
        for (std::size_t m = 1; m < left.c.size(); ++m)
            vl -= (left.c[m] / left.c[0]) * kt2[left.index(m, n) * n + j];
        double vr = (j == n - 1) ? br : 0.0;
        for (std::size_t m = 1; m < right.c.size(); ++m)
            vr -= (right.c[m] / right.c[0]) * kt2[right.index(m, n) * n + j];
        out[0 * n + j] = vl;
        out[(n - 1) * n + j] = vr;
    }
    return out;
}

// Periodic transfer matrix: rows 0 and N-1 replaced by the same weighted
// combination, interior rows untouched.
inline std::vector<double> dense_periodic(const std::vector<double>& k, std::size_t n,
                                          PeriodicWeights w = {}) {
    bcdetail::check_square(k, n);
    w.validate();
    std::vector<double> out = k;
    for (std::size_t j = 0; j < n; ++j) {
        double v = w.alpha * k[0 * n + j] + w.beta * k[(n - 1) * n + j];
        out[0 * n + j] = v;
        out[(n - 1) * n + j] = v;
    }
    return out;
}

} // namespace boon
