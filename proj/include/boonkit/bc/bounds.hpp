#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "boonkit/bc/stencil.hpp"
#include "boonkit/bc/correct.hpp"

namespace boon {

// A-priori sizes of the correction, i.e. of ||K u0 - K_bdy u0||_2 between the
// plain kernel output and the boundary-corrected one. The periodic and
// Dirichlet expressions are exact identities; the Neumann expression is an
// upper bound whose derivation is tight, so observed slack should sit at
// round-off level (the property tests record it).
//
// The periodic distance is sometimes quoted with an extra factor 1/2. Row
// averaging changes exactly two rows of the output, by -beta*(u[0]-u[N-1])
// and +alpha*(u[0]-u[N-1]), so the constant below is already exact; the tests
// hold it as an equality rather than asserting the looser halved form.

inline double bound_periodic(const std::vector<double>& u, PeriodicWeights w = {}) {
    w.validate();
    if (u.size() < 2)
        throw std::invalid_argument("bound_periodic: need at least 2 samples");
    double jump = u.front() - u.back();
    return std::sqrt(w.alpha * w.alpha + w.beta * w.beta) * std::abs(jump);
}

namespace bcdetail {

inline std::vector<double> dense_apply(const std::vector<double>& k, std::size_t n,
                                       const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += k[i * n + j] * x[j];
        y[i] = acc;
    }
    return y;
}

// sum_i K_{i,b}^2 / K_{bb}^2 - 1, the column energy entering both bounds
inline double column_energy(const std::vector<double>& k, std::size_t n, std::size_t b) {
    double kbb = k[b * n + b];
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = k[i * n + b] / kbb;
        s += r * r;
    }
    return s - 1.0;
}

} // namespace bcdetail

// || K u0 - K_bdy u0 ||_2 for the left-Dirichlet correction, evaluated from
// the uncorrected output alone.
inline double bound_dirichlet(const std::vector<double>& k, std::size_t n,
                              const std::vector<double>& u0, double alpha_t) {
    if (k.size() != n * n || u0.size() != n)
        throw std::invalid_argument("bound_dirichlet: shape mismatch");
    double k00 = k[0];
    if (k00 == 0.0)
        throw std::domain_error("bound_dirichlet: K_00 = 0, kernel has no boundary response");
    std::vector<double> u = bcdetail::dense_apply(k, n, u0);
    double f1 = u[0] - alpha_t;
    double f2s = (u[0] - k00 * u0[0]) * (u[0] - k00 * u0[0]) * bcdetail::column_energy(k, n, 0);
    return std::sqrt(f1 * f1 + f2s);
}

// Upper bound for the left-Neumann correction.
inline double bound_neumann(const std::vector<double>& k, std::size_t n,
                            const std::vector<double>& u0, double alpha_t, const FDStencil& st) {
    if (k.size() != n * n || u0.size() != n)
        throw std::invalid_argument("bound_neumann: shape mismatch");
    if (st.side != Side::left)
        throw std::invalid_argument("bound_neumann: left-side stencil expected");
    if (st.c.empty() || st.c[0] == 0.0)
        throw std::domain_error("bound_neumann: c0 = 0");
    double k00 = k[0];
    if (k00 == 0.0)
        throw std::domain_error("bound_neumann: K_00 = 0, kernel has no boundary response");
    double c0 = st.c[0];
    std::vector<double> u = bcdetail::dense_apply(k, n, u0);

    double f1 = u[0] - alpha_t / c0;
    for (std::size_t m = 1; m < st.c.size(); ++m)
        f1 += (st.c[m] / c0) * u[m];
    for (std::size_t m = 1; m < st.c.size(); ++m)
        f1 += (st.c[m] * k[m * n + 0]) / (c0 * k00) * (k00 * u0[0] - u[0]);
    double f2s = (u[0] - k00 * u0[0]) * (u[0] - k00 * u0[0]) * bcdetail::column_energy(k, n, 0);
    return std::sqrt(f1 * f1 + f2s);
}

} // namespace boon
